#pragma once

// Every invariant of the pipeline in one report: cocycle and root checks,
// edge relations, superisotropy, weights, chain property, and the
// gauge, tree-root and local-solution independence properties.

#include "exotic/assembly.hpp"

namespace exotic {

struct SuiteOptions {
    PipelineOptions pipeline;
    std::uint64_t seed = 1;       // drives the random gauge, perturbations and DW directions
    Vertex alternate_root = 0;    // 0: the largest vertex id different from the main root
};

/// Per-tetrahedron gauge factors r e^{i phi} with r in [0.5, 2].
inline std::vector<Complex> random_gauge(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.5, 2.0), phase(0.0, 2.0 * 3.14159265358979323846);
    std::vector<Complex> lambda(count);
    for (auto& l : lambda) {
        const double r = radius(rng);
        l = std::polar(r, phase(rng));
    }
    return lambda;
}

/// Edge relations, superisotropy and weights of every pentachoron of `cx`.
inline Report local_invariants(const Triangulation& tri, const ExoticComplex& cx, std::uint64_t seed) {
    Report rep;
    const double tol = cx.options.tol;
    for (int u = 0; u < tri.count(4); ++u) {
        rep.append(verify_edge_relations(tri, cx.omega, cx.operators[u], tol));
        rep.append(superisotropy_check(tri, cx.systems[u], tol));
        rep.add("f_antisymmetry_measured", cx.weights[u].antisymmetry_residual, tol, to_string(tri.pentachora()[u]));
        rep.add_flag("f_antisymmetry_exact", cx.weights[u].f == -cx.weights[u].f.transpose(), to_string(tri.pentachora()[u]));
        rep.append(pentachoron_weight(tri, cx.weights[u], cx.operators[u], tol, seed));
    }
    return rep;
}

inline DiagnosticsReport run_invariant_suite(const Triangulation& tri, const Cocycle2& omega, const SuiteOptions& options = {}) {
    const auto start = std::chrono::steady_clock::now();
    const double tol = options.pipeline.tol;
    const auto cx = build_exotic_complex(tri, omega, options.pipeline);
    DiagnosticsReport d = verify_chain(tri, cx);
    auto& rep = d.checks;

    const auto closed = validate_cocycle(tri, omega, tol);
    rep.add("cocycle_closed", closed.max_residual / std::max(closed.scale, 1e-300), tol);
    rep.append(five_k_check(tri, omega, cx.roots, tol));
    rep.append(local_invariants(tri, cx, options.seed));

    // gauge covariance
    {
        auto gauged_options = options.pipeline;
        gauged_options.gauge = random_gauge(tri.count(3), options.seed);
        const auto gx = build_exotic_complex(tri, omega, gauged_options);
        Report g = local_invariants(tri, gx, options.seed);
        for (int u = 0; u < tri.count(4); ++u)
            g.add("f_transform", gauge_transform_residual(cx.weights[u], gx.weights[u], gauged_options.gauge), tol,
                  to_string(tri.pentachora()[u]));
        for (auto c : g.checks) {
            c.name = "gauge/" + c.name;
            rep.checks.push_back(std::move(c));
        }
    }

    // a second maximal tree
    {
        Vertex alt = options.alternate_root;
        if (alt == 0) alt = tri.vertex_count() != options.pipeline.root ? tri.vertex_count() : 1;
        auto alt_options = options.pipeline;
        alt_options.root = alt;
        const auto ax = build_exotic_complex(tri, omega, alt_options);
        const Matrix t_numeric = basis_transition(cx.bases, ax.bases);
        // both bases consist of integer cochains, so T is an integer matrix
        const Matrix t = t_numeric.unaryExpr([](Complex z) { return Complex(std::round(z.real()), std::round(z.imag())); });
        const std::string where = "roots " + std::to_string(options.pipeline.root) + "," + std::to_string(alt);
        rep.add("tree_transition_integral", linalg::max_abs(t_numeric - t), tol, where);
        rep.add("tree_transition_det", std::abs(std::abs(t_numeric.determinant()) - 1.0), tol, where);
        rep.add("tree_transition_basis", linalg::max_abs(cx.bases.matrix * t - ax.bases.matrix), tol, where);
        rep.add("tree_transition_f2",
                linalg::bounded_difference(cx.f2 * t, ax.f2, cx.f2_scale * t.cwiseAbs() + ax.f2_scale), tol, where);
    }

    // H^2 columns do not depend on the local coboundary solutions
    const int nb = cx.bases.coboundary_count();
    const int nh = cx.bases.dimension() - nb;
    if (nh > 0) {
        const Columns moved =
            cocycle_columns(tri, cx.operators, cx.bases.matrix.rightCols(nh), tol, nullptr, options.seed + 17);
        const double df = linalg::bounded_difference(moved.f2, cx.f2.rightCols(nh), moved.f2_scale + cx.f2_scale.rightCols(nh));
        const double dg = linalg::bounded_difference(moved.g2, cx.g2.rightCols(nh), moved.g2_scale + cx.g2_scale.rightCols(nh));
        rep.add("h2_column_independence_f2", df, tol);
        rep.add("h2_column_independence_g2", dg, tol);
    }
    d.genericity["h1_zero"] = cx.h1_dimension == 0;
    d.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return d;
}

}  // namespace exotic
