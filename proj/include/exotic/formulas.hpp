#pragma once

// Closed-form per-tetrahedron quantities. Every function takes an accessor
// w(a, b, c) returning the cocycle value on the oriented triangle abc, and an
// oriented tetrahedron written as i, j, k, l.

#include "exotic/core.hpp"

namespace exotic::formulas {

template <typename Omega>
Complex psi(const Omega& w, Vertex i, Vertex j, Vertex k, Vertex l) {
    const Complex ijk = w(i, j, k), ijl = w(i, j, l);
    return ijk * ijl + w(i, k, l) * w(j, k, l) - ijk * ijk - ijl * ijl;
}

/// beta_ij = -a - b K and the unscaled gamma_ij = -a + b K, with K the root
/// value of the oriented tetrahedron ijkl.
struct EdgeTerms {
    Complex a;
    Complex b;

    Complex beta(Complex k_root) const { return -a - b * k_root; }
    Complex gamma_unscaled(Complex k_root) const { return -a + b * k_root; }
};

template <typename Omega>
EdgeTerms edge_terms(const Omega& w, Vertex i, Vertex j, Vertex k, Vertex l) {
    const Complex ikl = w(i, k, l), jkl = w(j, k, l);
    return {(w(i, j, k) + w(i, j, l)) * ikl * jkl * psi(w, k, l, i, j), (ikl + jkl) * psi(w, i, j, k, l)};
}

/// The factor c_t whose inverse scales the gammas. Zero signals a
/// non-generic cocycle.
template <typename Omega>
Complex c_factor(const Omega& w, Vertex i, Vertex j, Vertex k, Vertex l) {
    const Complex ijk = w(i, j, k), ijl = w(i, j, l), ikl = w(i, k, l), jkl = w(j, k, l);
    const Complex squares = ijk * ijk + ijl * ijl + ikl * ikl + jkl * jkl;
    return -ijk * ijl * ikl * jkl * (ijl - ijk) * (ikl + ijk) * (ikl - ijl) *
           (24.0 * ijk * ijl * ikl * jkl + 0.5 * squares * squares);
}

/// Same product with every factor replaced by its magnitude bound; the scale
/// against which c_t is judged to vanish.
template <typename Omega>
double c_factor_scale(const Omega& w, Vertex i, Vertex j, Vertex k, Vertex l) {
    const double ijk = std::abs(w(i, j, k)), ijl = std::abs(w(i, j, l)), ikl = std::abs(w(i, k, l)),
                 jkl = std::abs(w(j, k, l));
    const double squares = ijk * ijk + ijl * ijl + ikl * ikl + jkl * jkl;
    return ijk * ijl * ikl * jkl * (ijl + ijk) * (ikl + ijk) * (ikl + ijl) *
           (24.0 * ijk * ijl * ikl * jkl + 0.5 * squares * squares);
}

}  // namespace exotic::formulas
