#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace exotic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Vertex ids run from 1 to the vertex count.
using Vertex = int;

/// A simplex written by its vertices. Canonical keys are ascending; an
/// oriented simplex is any ordering, its orientation being the parity of the
/// ordering relative to the ascending key.
template <std::size_t N>
using Simplex = std::array<Vertex, N>;

using Edge = Simplex<2>;
using Triangle = Simplex<3>;
using Tetrahedron = Simplex<4>;
using Pentachoron = Simplex<5>;

/// Broken precondition of an operation (wrong sizes, index out of range).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input data: bad tuples, missing cochain values, bad files.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The cocycle is not generic enough for a formula with a vanishing
/// denominator. `where` names the offending simplex.
class GenericityError : public std::runtime_error {
public:
    GenericityError(const std::string& what, std::string where)
        : std::runtime_error(what + " at " + where), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// A numerical identity that must hold by construction failed.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <std::size_t N>
std::string to_string(const Simplex<N>& s) {
    std::string out;
    for (std::size_t i = 0; i < N; ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

/// Parity (+1/-1) of the permutation that sorts `seq` ascending.
template <typename Range>
int permutation_sign(const Range& seq) {
    int sign = 1;
    const auto n = std::size(seq);
    auto it = std::begin(seq);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (it[i] > it[j]) sign = -sign;
    return sign;
}

template <std::size_t N>
Simplex<N> sorted(Simplex<N> s) {
    std::sort(s.begin(), s.end());
    return s;
}

template <std::size_t N>
bool contains(const Simplex<N>& s, Vertex v) {
    return std::find(s.begin(), s.end(), v) != s.end();
}

/// One named check: residual against threshold, with the simplex it refers to.
struct Check {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string location;
};

/// Flat list of checks; the overall verdict is their conjunction.
struct Report {
    std::vector<Check> checks;

    void add(std::string name, double residual, double threshold, std::string location = {}) {
        checks.push_back({std::move(name), residual, threshold, residual < threshold, std::move(location)});
    }

    void add_flag(std::string name, bool ok, std::string location = {}) {
        checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.5, ok, std::move(location)});
    }

    void append(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    /// Largest residual among checks whose name starts with `prefix`.
    double max_residual(const std::string& prefix) const {
        double worst = 0.0;
        for (const auto& c : checks)
            if (c.name.rfind(prefix, 0) == 0) worst = std::max(worst, c.residual);
        return worst;
    }

    std::vector<Check> failures() const {
        std::vector<Check> out;
        for (const auto& c : checks)
            if (!c.passed) out.push_back(c);
        return out;
    }
};

}  // namespace exotic
