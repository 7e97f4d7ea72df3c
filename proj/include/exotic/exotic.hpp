#pragma once

// Umbrella header for the library. The CLI lives in exotic/cli.hpp and is not
// included here because it pulls in CLI11.

#include "exotic/assembly.hpp"
#include "exotic/builtin.hpp"
#include "exotic/cochain.hpp"
#include "exotic/core.hpp"
#include "exotic/edgeops.hpp"
#include "exotic/formulas.hpp"
#include "exotic/grassmann.hpp"
#include "exotic/io.hpp"
#include "exotic/linalg.hpp"
#include "exotic/simplicial.hpp"
#include "exotic/suite.hpp"
#include "exotic/weights.hpp"
