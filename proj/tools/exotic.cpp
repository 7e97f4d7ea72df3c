#include "exotic/cli.hpp"

int main(int argc, char** argv) { return exotic::cli::run_cli(argc, argv); }
