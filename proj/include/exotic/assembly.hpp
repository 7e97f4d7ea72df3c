#pragma once

// Global morphisms of the exotic complex
//   0 -> C -f1-> Z^2 -f2-> C_3 -f3-> C^3 -f4-> (Z^2)* -f5-> C -> 0
// with f4 = f2^T and f5 = f1^T, the companion g2 built from the gammas, and
// the chain-property and rank diagnostics.

#include "exotic/weights.hpp"

#include <chrono>
#include <map>

namespace exotic {

struct PipelineOptions {
    Vertex root = 1;
    std::vector<Vertex> vertex_order;  // empty: ascending ids
    double tol = 1e-9;
    std::vector<Complex> gauge;  // empty: none; otherwise one factor per tetrahedron
};

struct ExoticComplex {
    std::array<int, 6> dimensions{};
    Matrix f1, f2, g2, f3;
    // entrywise magnitudes of the terms summed into each entry
    Eigen::MatrixXd f1_scale, f2_scale, g2_scale, f3_scale;

    Matrix f4() const { return f2.transpose(); }
    Matrix f5() const { return f1.transpose(); }

    ComplexBases bases;
    int h1_dimension = 0;
    Cocycle2 omega;
    RootSystem roots;
    CoefficientTable coefficients;
    std::vector<PentachoronOperators> operators;
    std::vector<SuperisotropicSystem> systems;
    std::vector<PentachoronWeight> weights;
    Report assembly_checks;  // agreement of the two cofaces of every tetrahedron
    PipelineOptions options;
};

struct Columns {
    Matrix f2, g2;
    Eigen::MatrixXd f2_scale, g2_scale;
};

/// f2 and g2 columns of arbitrary closed 2-cochains given as columns of `cochains`.
/// Per pentachoron the cochain is written as delta(nu) locally and the
/// tetrahedron entries are sum_b nu_b beta_bt and sum_b nu_b gamma_bt (gamma on
/// the ascending orientation). Each tetrahedron takes its value from the
/// lower-indexed coface; the other must agree. A nonzero `perturb_seed` adds a
/// random local vertex coboundary to every nu before use.
inline Columns cocycle_columns(const Triangulation& tri, const std::vector<PentachoronOperators>& ops,
                               const Matrix& cochains, double tol, Report* checks = nullptr,
                               std::uint64_t perturb_seed = 0) {
    const int n3 = tri.count(3);
    const auto cols = cochains.cols();
    Columns out{Matrix::Zero(n3, cols), Matrix::Zero(n3, cols), Eigen::MatrixXd::Zero(n3, cols),
                Eigen::MatrixXd::Zero(n3, cols)};
    std::mt19937_64 rng(perturb_seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (Eigen::Index j = 0; j < cols; ++j) {
        Cocycle2 c = Cocycle2::from_vector(cochains.col(j));
        // value, scale per (tetrahedron, coface slot)
        std::vector<std::array<Complex, 2>> beta(n3), gamma(n3);
        std::vector<std::array<double, 2>> beta_s(n3), gamma_s(n3);
        std::vector<int> seen(n3, 0);
        for (int u = 0; u < tri.count(4); ++u) {
            auto nu = local_coboundary_solve(tri, u, c, tol);
            if (perturb_seed) {
                std::array<Complex, 5> f{};
                for (auto& x : f) x = Complex(unit(rng), unit(rng));
                const auto key = tri.sorted_pentachoron(u);
                for (int b = 0; b < 10; ++b) {
                    const auto [x, y] = ops[u].ops[b].b;
                    const auto px = std::find(key.begin(), key.end(), x) - key.begin();
                    const auto py = std::find(key.begin(), key.end(), y) - key.begin();
                    nu[b] += f[py] - f[px];
                }
            }
            for (int t : tri.pentachoron_tetrahedra(u)) {
                Complex sb, sg;
                double ab = 0.0, ag = 0.0;
                const double sign = induced_orientation_sign(tri, u, t);
                for (int b = 0; b < 10; ++b)
                    if (const auto* e = ops[u].ops[b].at(t)) {
                        sb += nu[b] * e->beta;
                        sg += nu[b] * e->gamma * sign;
                        ab += std::abs(nu[b] * e->beta);
                        ag += std::abs(nu[b] * e->gamma);
                    }
                const int k = seen[t]++;
                if (k > 1) throw InternalError("tetrahedron [" + to_string(tri.tetrahedra()[t]) + "] has more than two cofaces");
                beta[t][k] = sb;
                gamma[t][k] = sg;
                beta_s[t][k] = ab;
                gamma_s[t][k] = ag;
            }
        }
        for (int t = 0; t < n3; ++t) {
            if (seen[t] != 2) throw InternalError("tetrahedron [" + to_string(tri.tetrahedra()[t]) + "] lacks two cofaces");
            const double rb = std::abs(beta[t][0] - beta[t][1]) / std::max(beta_s[t][0] + beta_s[t][1], 1e-300);
            const double rg = std::abs(gamma[t][0] - gamma[t][1]) / std::max(gamma_s[t][0] + gamma_s[t][1], 1e-300);
            const std::string where = to_string(tri.tetrahedra()[t]) + " column " + std::to_string(j);
            if (rb > tol || rg > tol)
                throw InternalError("coefficient pipeline error: cofaces disagree at " + where);
            if (checks) {
                checks->add("f2_coface", rb, tol, where);
                checks->add("g2_coface", rg, tol, where);
            }
            out.f2(t, j) = beta[t][0];
            out.g2(t, j) = gamma[t][0];
            out.f2_scale(t, j) = beta_s[t][0];
            out.g2_scale(t, j) = gamma_s[t][0];
        }
    }
    return out;
}

/// f2 and g2 on the Z^2 basis: delta(b) columns read the coefficients of b
/// directly, H^2 columns go through local coboundary solves.
inline Columns assemble_f2(const Triangulation& tri, const ComplexBases& bases, const CoefficientTable& coeffs,
                           const std::vector<PentachoronOperators>& ops, double tol, Report* checks = nullptr) {
    const int n3 = tri.count(3);
    const int nb = bases.coboundary_count();
    const int dim = bases.dimension();
    Columns out{Matrix::Zero(n3, dim), Matrix::Zero(n3, dim), Eigen::MatrixXd::Zero(n3, dim),
                Eigen::MatrixXd::Zero(n3, dim)};
    std::vector<std::vector<int>> tets_of_edge(tri.count(1));
    for (int t = 0; t < n3; ++t)
        for (const auto& b : detail::k_subsets<2>(tri.tetrahedra()[t])) tets_of_edge[tri.index(b)].push_back(t);
    for (int j = 0; j < nb; ++j) {
        const int e = bases.split.basis_edges[j];
        const auto& b = tri.edges()[e];
        for (int t : tets_of_edge[e]) {
            out.f2(t, j) = coeffs[t].beta_of(b);
            out.g2(t, j) = coeffs[t].gamma_of(b);
            out.f2_scale(t, j) = std::abs(out.f2(t, j));
            out.g2_scale(t, j) = std::abs(out.g2(t, j));
        }
    }
    if (dim > nb) {
        const Columns h = cocycle_columns(tri, ops, bases.matrix.rightCols(dim - nb), tol, checks);
        out.f2.rightCols(dim - nb) = h.f2;
        out.g2.rightCols(dim - nb) = h.g2;
        out.f2_scale.rightCols(dim - nb) = h.f2_scale;
        out.g2_scale.rightCols(dim - nb) = h.g2_scale;
    }
    return out;
}

/// f3 = -1/2 sum_u F_u placed at the global tetrahedron indices; antisymmetric
/// because every F_u is.
inline std::pair<Matrix, Eigen::MatrixXd> assemble_f3(const Triangulation& tri, const std::vector<PentachoronWeight>& weights) {
    const int n3 = tri.count(3);
    Matrix f3 = Matrix::Zero(n3, n3);
    Eigen::MatrixXd scale = Eigen::MatrixXd::Zero(n3, n3);
    std::vector<std::vector<bool>> filled(n3, std::vector<bool>(n3, false));
    for (const auto& w : weights)
        for (int p = 0; p < 5; ++p)
            for (int q = 0; q < 5; ++q) {
                if (p == q) continue;
                const int a = w.tetrahedra[p], b = w.tetrahedra[q];
                if (filled[a][b])
                    throw InternalError("tetrahedra [" + to_string(tri.tetrahedra()[a]) + "] and [" +
                                        to_string(tri.tetrahedra()[b]) + "] share two pentachora");
                filled[a][b] = true;
                f3(a, b) = -0.5 * w.f(p, q);
                scale(a, b) = 0.5 * std::abs(w.f(p, q));
            }
    return {f3, scale};
}

inline ExoticComplex build_exotic_complex(const Triangulation& tri, const Cocycle2& omega, const PipelineOptions& options = {}) {
    if (!(options.tol > 0.0)) throw ContractViolation("tolerance must be positive");
    if (const auto m = check_closed_oriented(tri); !m.passed())
        throw ValidationError("triangulation is not a closed oriented connected pseudomanifold");
    const auto cocycle = validate_cocycle(tri, omega, options.tol);
    if (!cocycle.passed)
        throw ValidationError("omega is not closed at [" + to_string(tri.tetrahedra()[cocycle.worst_tetrahedron]) + "]");
    if (const auto generic = check_genericity(tri, omega); !generic.generic())
        throw GenericityError(generic.failure, generic.location);

    ExoticComplex cx;
    cx.options = options;
    cx.omega = omega;
    const auto h2 = h2_basis(tri);
    cx.h1_dimension = h2.h1_dimension;
    cx.bases = z2_basis(tri, maximal_tree_split(tri, options.root), h2.generators);
    cx.roots = root_system(tri, omega, options.vertex_order, options.tol);
    cx.coefficients = coefficient_table(tri, omega, cx.roots);
    if (!options.gauge.empty()) cx.coefficients = apply_gauge(std::move(cx.coefficients), options.gauge);
    for (int u = 0; u < tri.count(4); ++u) {
        cx.operators.push_back(pentachoron_operators(tri, cx.coefficients, u));
        cx.systems.push_back(superisotropic_ops(tri, omega, cx.roots, cx.operators.back(), options.tol));
        cx.weights.push_back(pentachoron_F(tri, cx.systems.back(), options.tol));
    }

    const int dim = cx.bases.dimension();
    const int n3 = tri.count(3);
    cx.dimensions = {1, dim, n3, n3, dim, 1};
    cx.f1 = f1_column(omega, cx.bases, options.tol);
    cx.f1_scale = cx.f1.cwiseAbs();
    auto cols = assemble_f2(tri, cx.bases, cx.coefficients, cx.operators, options.tol, &cx.assembly_checks);
    cx.f2 = std::move(cols.f2);
    cx.g2 = std::move(cols.g2);
    cx.f2_scale = std::move(cols.f2_scale);
    cx.g2_scale = std::move(cols.g2_scale);
    std::tie(cx.f3, cx.f3_scale) = assemble_f3(tri, cx.weights);
    cx.assembly_checks.append(cross_coface_check(tri, cx.operators, options.tol));
    return cx;
}

struct DiagnosticsReport {
    Report checks;
    std::map<std::string, int> ranks;
    std::map<std::string, bool> genericity;
    double elapsed_ms = 0.0;

    bool passed() const { return checks.passed(); }
};

/// Rows of `m` belonging to the five tetrahedra of u.
inline Matrix pentachoron_rows(const Triangulation& tri, const Matrix& m, int u) {
    const auto& tets = tri.pentachoron_tetrahedra(u);
    Matrix out(5, m.cols());
    for (int p = 0; p < 5; ++p) out.row(p) = m.row(tets[p]);
    return out;
}

inline DiagnosticsReport verify_chain(const Triangulation& tri, const ExoticComplex& cx) {
    const auto start = std::chrono::steady_clock::now();
    const double tol = cx.options.tol;
    DiagnosticsReport d;
    auto& r = d.checks;
    const Eigen::MatrixXd f4_scale = cx.f2_scale.transpose();
    const Eigen::MatrixXd f5_scale = cx.f1_scale.transpose();
    r.add("chain_f2f1", linalg::bounded_product_residual(cx.f2, cx.f1, cx.f2_scale, cx.f1_scale), tol);
    r.add("chain_g2f1", linalg::bounded_product_residual(cx.g2, cx.f1, cx.g2_scale, cx.f1_scale), tol);
    r.add("chain_f3f2", linalg::bounded_product_residual(cx.f3, cx.f2, cx.f3_scale, cx.f2_scale), tol);
    r.add("chain_f4f3", linalg::bounded_product_residual(cx.f4(), cx.f3, f4_scale, cx.f3_scale), tol);
    r.add("chain_f5f4", linalg::bounded_product_residual(cx.f5(), cx.f4(), f5_scale, f4_scale), tol);
    r.add("chain_norm_f2f1", linalg::relative_product_residual(cx.f2, cx.f1), tol);
    r.add("chain_norm_g2f1", linalg::relative_product_residual(cx.g2, cx.f1), tol);
    r.add("chain_norm_f3f2", linalg::relative_product_residual(cx.f3, cx.f2), tol);
    r.add("chain_norm_f4f3", linalg::relative_product_residual(cx.f4(), cx.f3), tol);
    r.add("chain_norm_f5f4", linalg::relative_product_residual(cx.f5(), cx.f4()), tol);
    r.add("f3_antisymmetry", linalg::max_abs(cx.f3 + cx.f3.transpose()), std::numeric_limits<double>::min());
    r.add_flag("dimension_sum", cx.dimensions[0] - cx.dimensions[1] + cx.dimensions[2] - cx.dimensions[3] +
                                        cx.dimensions[4] - cx.dimensions[5] == 0);

    for (int u = 0; u < tri.count(4); ++u) {
        const std::string where = to_string(tri.pentachora()[u]);
        const auto rf = linalg::numerical_rank(linalg::equilibrate_rows(pentachoron_rows(tri, cx.f2, u)));
        const auto rg = linalg::numerical_rank(linalg::equilibrate_rows(pentachoron_rows(tri, cx.g2, u)));
        r.add_flag("f2_restriction_rank_5", rf.rank == 5, where + " rank " + std::to_string(rf.rank));
        r.add_flag("g2_restriction_rank_4", rg.rank == 4, where + " rank " + std::to_string(rg.rank));
        r.add("f2_restriction_gap", 1.0 / rf.gap, min_rank_gap_inverse, where);
        r.add("g2_restriction_gap", 1.0 / rg.gap, min_rank_gap_inverse, where);
    }
    r.append(cx.assembly_checks);

    // reported, not asserted
    d.ranks["f1"] = linalg::rank(cx.f1);
    d.ranks["f2"] = linalg::rank(linalg::equilibrate_rows(cx.f2));
    d.ranks["f3"] = linalg::rank(linalg::equilibrate_rows(cx.f3));
    d.genericity["omega"] = true;
    d.genericity["simply_connected_h1_zero"] = cx.h1_dimension == 0;
    d.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return d;
}

/// T with A' = A T for the Z^2 basis matrices of two tree choices.
inline Matrix basis_transition(const ComplexBases& a, const ComplexBases& b) {
    Matrix t(a.dimension(), b.dimension());
    for (Eigen::Index j = 0; j < t.cols(); ++j) t.col(j) = linalg::solve(a.matrix, b.matrix.col(j));
    return t;
}

}  // namespace exotic
