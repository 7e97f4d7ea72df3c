#pragma once

// Shared fixtures for the test suites.

#include "exotic/exotic.hpp"

#include <random>

namespace exotic::testing {

/// nu_ij = i * j on every edge; omega = delta nu.
inline Cochain1 demo_nu(const Triangulation& tri) {
    Cochain1 nu;
    for (const auto& [i, j] : tri.edges()) nu.values.emplace_back(static_cast<double>(i * j), 0.0);
    return nu;
}

inline Cocycle2 demo_omega(const Triangulation& tri) { return coboundary(tri, demo_nu(tri)); }

inline const Triangulation& boundary() {
    static const Triangulation tri = Triangulation::build(builtin::boundary_5_simplex());
    return tri;
}

inline const Triangulation& cp2() {
    static const Triangulation tri = Triangulation::build(builtin::cp2_9());
    return tri;
}

/// Pentachoron index of the given vertex set in either orientation.
inline int pentachoron_index(const Triangulation& tri, Pentachoron u) {
    const auto key = sorted(u);
    for (int i = 0; i < tri.count(4); ++i)
        if (tri.sorted_pentachoron(i) == key) return i;
    return -1;
}

/// Everything downstream of omega, without the global assembly.
struct Local {
    RootSystem roots;
    CoefficientTable coeffs;
    std::vector<PentachoronOperators> ops;
};

inline Local local_data(const Triangulation& tri, const Cocycle2& omega) {
    Local l;
    l.roots = root_system(tri, omega);
    l.coeffs = coefficient_table(tri, omega, l.roots);
    for (int u = 0; u < tri.count(4); ++u) l.ops.push_back(pentachoron_operators(tri, l.coeffs, u));
    return l;
}

inline Matrix random_antisymmetric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix f = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            f(i, j) = Complex(g(rng), g(rng));
            f(j, i) = -f(i, j);
        }
    return f;
}

inline grassmann::Element random_element(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    grassmann::Element a(n);
    for (grassmann::Mask m = 0; m < (grassmann::Mask{1} << n); ++m) a.add_term(m, Complex(g(rng), g(rng)));
    return a;
}

}  // namespace exotic::testing
