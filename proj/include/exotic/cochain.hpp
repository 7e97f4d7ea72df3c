#pragma once

// Simplicial cochains: coboundary matrices, cocycle validation and
// generation, the coboundary-plus-H^2 basis of Z^2, coordinates of a cocycle
// in that basis, and local coboundary solves inside one pentachoron.

#include "exotic/formulas.hpp"
#include "exotic/linalg.hpp"
#include "exotic/simplicial.hpp"

#include <random>

namespace exotic {

/// Values on the ascending orientation of every k-simplex, indexed like the
/// triangulation's k-simplex table. Reversing orientation flips the sign.
template <int Dim>
struct Cochain {
    std::vector<Complex> values;

    Vector as_vector() const { return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())); }

    static Cochain from_vector(const Vector& v) { return {std::vector<Complex>(v.data(), v.data() + v.size())}; }

    double max_abs() const {
        double m = 0.0;
        for (auto c : values) m = std::max(m, std::abs(c));
        return m;
    }
};

using Cochain1 = Cochain<1>;
using Cocycle2 = Cochain<2>;

/// Value of a cochain on an oriented simplex.
template <int Dim, std::size_t N>
Complex oriented_value(const Triangulation& tri, const Cochain<Dim>& c, const Simplex<N>& s) {
    static_assert(N == Dim + 1);
    return static_cast<double>(permutation_sign(s)) * c.values.at(tri.index(s));
}

/// Matrix of delta: C^k -> C^{k+1} in the canonical simplex orders.
inline Matrix coboundary_matrix(const Triangulation& tri, int k) {
    if (k < 0 || k > 2) throw ContractViolation("coboundary degree must be 0, 1 or 2");
    const int rows = tri.count(k + 1), cols = tri.count(k);
    Matrix m = Matrix::Zero(rows, cols);
    auto fill = [&](const auto& table) {
        for (int r = 0; r < rows; ++r) {
            const auto& s = table[r];
            for (std::size_t p = 0; p < s.size(); ++p) {
                const auto face = detail::omit(s, p);
                int c = 0;
                if constexpr (std::tuple_size_v<std::decay_t<decltype(face)>> == 1) c = face[0] - 1;
                else c = tri.index(face);
                m(r, c) += (p & 1) ? -1.0 : 1.0;
            }
        }
    };
    if (k == 0) fill(tri.edges());
    else if (k == 1) fill(tri.triangles());
    else fill(tri.tetrahedra());
    return m;
}

inline Cocycle2 coboundary(const Triangulation& tri, const Cochain1& nu) {
    if (static_cast<int>(nu.values.size()) != tri.count(1)) throw ContractViolation("1-cochain size mismatch");
    return Cocycle2::from_vector(coboundary_matrix(tri, 1) * nu.as_vector());
}

struct CocycleCheck {
    double max_residual = 0.0;
    double scale = 0.0;
    int worst_tetrahedron = -1;
    bool passed = false;
};

/// Max |w_jkl - w_ikl + w_ijl - w_ijk| over tetrahedra; passes below
/// `tol * max|w|`.
inline CocycleCheck validate_cocycle(const Triangulation& tri, const Cocycle2& omega, double tol = 1e-9) {
    if (static_cast<int>(omega.values.size()) != tri.count(2))
        throw ValidationError("cocycle has " + std::to_string(omega.values.size()) + " values, triangulation has " +
                              std::to_string(tri.count(2)) + " triangles");
    CocycleCheck out;
    out.scale = omega.max_abs();
    const Vector res = coboundary_matrix(tri, 2) * omega.as_vector();
    for (Eigen::Index t = 0; t < res.size(); ++t)
        if (std::abs(res[t]) > out.max_residual) {
            out.max_residual = std::abs(res[t]);
            out.worst_tetrahedron = static_cast<int>(t);
        }
    out.passed = out.max_residual <= tol * out.scale;
    return out;
}

/// Genericity flags that depend on the cocycle alone. Empty `failure` means generic.
struct GenericityCheck {
    std::string failure;
    std::string location;
    bool generic() const { return failure.empty(); }
};

inline GenericityCheck check_genericity(const Triangulation& tri, const Cocycle2& omega, double tol = 1e-12) {
    const double scale = omega.max_abs();
    if (scale == 0.0) return {"cocycle is identically zero", "every triangle"};
    for (int s = 0; s < tri.count(2); ++s)
        if (std::abs(omega.values[s]) <= tol * scale) return {"omega vanishes", to_string(tri.triangles()[s])};
    auto w = [&](Vertex a, Vertex b, Vertex c) { return oriented_value(tri, omega, Triangle{a, b, c}); };
    for (const auto& t : tri.tetrahedra()) {
        const auto [i, j, k, l] = t;
        if (std::abs(formulas::c_factor(w, i, j, k, l)) <= tol * formulas::c_factor_scale(w, i, j, k, l))
            return {"c_t vanishes", to_string(t)};
    }
    return {};
}

struct GeneratedCocycle {
    Cochain1 nu;
    Cocycle2 omega;
    std::uint64_t seed = 0;  // seed that produced the accepted draw
    int attempts = 0;
};

/// nu has Gaussian-integer values with real and imaginary parts uniform in
/// [-9, 9]; omega = delta nu. Redrawn with seed+1, seed+2, ... until generic.
inline GeneratedCocycle generate_generic_cocycle(const Triangulation& tri, std::uint64_t seed, int max_attempts = 1000) {
    const Matrix d1 = coboundary_matrix(tri, 1);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
        auto draw = [&] { return static_cast<double>(static_cast<int>(rng() % 19) - 9); };
        Cochain1 nu;
        nu.values.reserve(tri.count(1));
        for (int e = 0; e < tri.count(1); ++e) {
            const double re = draw();
            const double im = draw();
            nu.values.emplace_back(re, im);
        }
        Cocycle2 omega = Cocycle2::from_vector(d1 * nu.as_vector());
        if (check_genericity(tri, omega).generic())
            return {std::move(nu), std::move(omega), seed + static_cast<std::uint64_t>(attempt), attempt + 1};
    }
    throw GenericityError("no generic cocycle after " + std::to_string(max_attempts) + " draws",
                          "seed " + std::to_string(seed));
}

struct H2Result {
    std::vector<Cocycle2> generators;
    int h1_dimension = 0;  // nonzero means the simple-connectivity assumption fails
    /// Simple connectivity is the caller's assertion; only H^1 is computed.
    bool assumption_checked = false;
};

/// Representatives of a basis of H^2: the echelon null-space basis of delta^2,
/// keeping in order those vectors independent of im delta^1 and of the ones
/// already kept.
inline H2Result h2_basis(const Triangulation& tri) {
    const Matrix d0 = coboundary_matrix(tri, 0);
    const Matrix d1 = coboundary_matrix(tri, 1);
    const Matrix d2 = coboundary_matrix(tri, 2);
    H2Result out;
    out.h1_dimension = tri.count(1) - linalg::rank(d1) - linalg::rank(d0);
    const Matrix kernel = linalg::echelon_null_space(d2);
    Matrix span = d1;
    int current = linalg::rank(span);
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        Matrix candidate(span.rows(), span.cols() + 1);
        candidate << span, kernel.col(c);
        const int r = linalg::rank(candidate);
        if (r > current) {
            span = std::move(candidate);
            current = r;
            out.generators.push_back(Cocycle2::from_vector(kernel.col(c)));
        }
    }
    return out;
}

/// Ordered basis of Z^2: delta b for b in the basis edges, then the H^2
/// representatives. Columns of `matrix` are the basis vectors.
struct ComplexBases {
    EdgeBasisSplit split;
    std::vector<Cocycle2> h2_generators;
    Matrix matrix;

    int dimension() const { return static_cast<int>(matrix.cols()); }
    int coboundary_count() const { return static_cast<int>(split.basis_edges.size()); }
};

inline int z2_dimension(const Triangulation& tri) { return tri.count(2) - linalg::rank(coboundary_matrix(tri, 2)); }

inline ComplexBases z2_basis(const Triangulation& tri, const EdgeBasisSplit& split, std::vector<Cocycle2> h2) {
    const Matrix d1 = coboundary_matrix(tri, 1);
    ComplexBases out{split, std::move(h2), {}};
    const auto nb = static_cast<Eigen::Index>(split.basis_edges.size());
    out.matrix.resize(tri.count(2), nb + static_cast<Eigen::Index>(out.h2_generators.size()));
    for (Eigen::Index i = 0; i < nb; ++i) out.matrix.col(i) = d1.col(split.basis_edges[i]);
    for (std::size_t i = 0; i < out.h2_generators.size(); ++i) {
        if (static_cast<int>(out.h2_generators[i].values.size()) != tri.count(2))
            throw ContractViolation("H^2 generator size mismatch");
        out.matrix.col(nb + static_cast<Eigen::Index>(i)) = out.h2_generators[i].as_vector();
    }
    const int r = linalg::rank(out.matrix);
    const int dim = z2_dimension(tri);
    if (r != out.matrix.cols() || r != dim)
        throw ValidationError("Z^2 basis is degenerate: rank " + std::to_string(r) + " of " +
                              std::to_string(out.matrix.cols()) + " vectors, dim Z^2 = " + std::to_string(dim));
    return out;
}

/// Coordinates of omega in the Z^2 basis: nu_b for b in B, then nu_z.
inline Vector f1_column(const Cocycle2& omega, const ComplexBases& bases, double tol = 1e-9) {
    const Vector w = omega.as_vector();
    if (w.size() != bases.matrix.rows()) throw ContractViolation("cocycle size mismatch");
    const Vector x = linalg::solve(bases.matrix, w);
    const double residual = (bases.matrix * x - w).cwiseAbs().maxCoeff();
    if (residual > tol * std::max(omega.max_abs(), 1e-300))
        throw ValidationError("cocycle is not in the span of the Z^2 basis (residual " + std::to_string(residual) + ")");
    return x;
}

/// Coboundary restricted to pentachoron u: rows its 10 triangles, columns its
/// 10 edges, both in lexicographic order.
inline Matrix local_coboundary_matrix(const Triangulation& tri, int u) {
    const auto edges = tri.pentachoron_edges(u);
    const auto tris = tri.pentachoron_triangles(u);
    Matrix m = Matrix::Zero(10, 10);
    for (int r = 0; r < 10; ++r) {
        const auto& s = tri.triangles()[tris[r]];
        for (std::size_t p = 0; p < 3; ++p) {
            const int e = tri.index(detail::omit(s, p));
            const int c = static_cast<int>(std::find(edges.begin(), edges.end(), e) - edges.begin());
            m(r, c) += (p & 1) ? -1.0 : 1.0;
        }
    }
    return m;
}

/// Some nu on the 10 edges of u (ascending orientation, lexicographic order)
/// with delta nu = c on the 10 triangles of u.
inline std::array<Complex, 10> local_coboundary_solve(const Triangulation& tri, int u, const Cocycle2& c,
                                                      double tol = 1e-9) {
    const auto tris = tri.pentachoron_triangles(u);
    Vector rhs(10);
    for (int r = 0; r < 10; ++r) rhs[r] = c.values.at(tris[r]);
    const Matrix d = local_coboundary_matrix(tri, u);
    const Vector x = linalg::solve(d, rhs);
    const double residual = (d * x - rhs).cwiseAbs().maxCoeff();
    if (residual > tol * std::max(rhs.cwiseAbs().maxCoeff(), 1e-300))
        throw ValidationError("cochain is not closed on pentachoron [" + to_string(tri.pentachora()[u]) + "]");
    std::array<Complex, 10> out{};
    for (int i = 0; i < 10; ++i) out[i] = x[i];
    return out;
}

}  // namespace exotic
