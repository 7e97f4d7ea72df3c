#pragma once

// Local edge operators d_b^(u) = sum over the three tetrahedra b < t < u of
// (beta_bt d/dtheta_t + gamma_bt theta_t), built from closed-form
// coefficients, plus the checks of their linear relations and scalar products.

#include "exotic/cochain.hpp"
#include "exotic/grassmann.hpp"

#include <functional>
#include <numeric>

namespace exotic {

/// Rank decisions require kept / discarded singular values of at least 1e6.
inline constexpr double min_rank_gap_inverse = 1e-6;

inline auto omega_accessor(const Triangulation& tri, const Cocycle2& omega) {
    return [&tri, &omega](Vertex a, Vertex b, Vertex c) { return oriented_value(tri, omega, Triangle{a, b, c}); };
}

// ---------------------------------------------------------------------------
// Root system

/// q on every triangle and K on every tetrahedron. q is the principal root
/// of omega on the triangle ordered by `vertex_order`; K is stored on the
/// ascending (by id) orientation.
struct RootSystem {
    std::vector<Complex> q;
    std::vector<Complex> k;
    std::vector<Vertex> vertex_order;  // vertex_order[position] = vertex

    /// K on an oriented tetrahedron.
    Complex k_oriented(const Triangulation& tri, const Tetrahedron& t) const {
        return static_cast<double>(permutation_sign(t)) * k.at(tri.index(t));
    }
};

inline std::vector<Vertex> identity_order(const Triangulation& tri) {
    std::vector<Vertex> order(tri.vertex_count());
    std::iota(order.begin(), order.end(), 1);
    return order;
}

/// Residual of prod_t K_t (orientation induced from u) = prod_{s asc} omega_s
/// on every pentachoron, relative to the magnitude of the right side.
inline Report five_k_check(const Triangulation& tri, const Cocycle2& omega, const RootSystem& roots, double tol = 1e-9) {
    Report rep;
    for (int u = 0; u < tri.count(4); ++u) {
        const auto& pu = tri.pentachora()[u];
        Complex lhs = 1.0;
        for (int t : tri.pentachoron_tetrahedra(u))
            lhs *= static_cast<double>(induced_orientation_sign(tri, u, t)) * roots.k[t];
        Complex rhs = static_cast<double>(permutation_sign(pu));
        for (int s : tri.pentachoron_triangles(u)) rhs *= omega.values[s];
        rep.add("five_k", std::abs(lhs - rhs) / std::abs(rhs), tol, to_string(pu));
    }
    return rep;
}

inline RootSystem root_system(const Triangulation& tri, const Cocycle2& omega, std::vector<Vertex> vertex_order = {},
                              double tol = 1e-9) {
    if (vertex_order.empty()) vertex_order = identity_order(tri);
    if (static_cast<int>(vertex_order.size()) != tri.vertex_count())
        throw ContractViolation("vertex order must list every vertex once");
    std::vector<int> position(tri.vertex_count() + 1, -1);
    for (std::size_t p = 0; p < vertex_order.size(); ++p) {
        const Vertex v = vertex_order[p];
        if (v < 1 || v > tri.vertex_count() || position[v] >= 0)
            throw ContractViolation("vertex order must list every vertex once");
        position[v] = static_cast<int>(p);
    }
    auto by_order = [&](auto s) {
        std::sort(s.begin(), s.end(), [&](Vertex a, Vertex b) { return position[a] < position[b]; });
        return s;
    };
    RootSystem roots;
    roots.vertex_order = vertex_order;
    roots.q.resize(tri.count(2));
    for (int s = 0; s < tri.count(2); ++s) {
        const auto ordered = by_order(tri.triangles()[s]);
        const Complex w = oriented_value(tri, omega, ordered);
        if (w == Complex{}) throw GenericityError("omega vanishes", to_string(tri.triangles()[s]));
        roots.q[s] = std::sqrt(w);
    }
    roots.k.resize(tri.count(3));
    for (int t = 0; t < tri.count(3); ++t) {
        const auto ordered = by_order(tri.tetrahedra()[t]);
        Complex k = 1.0;
        for (std::size_t p = 0; p < 4; ++p) k *= roots.q[tri.index(detail::omit(ordered, p))];
        roots.k[t] = static_cast<double>(permutation_sign(ordered)) * k;
    }
    const auto rep = five_k_check(tri, omega, roots, tol);
    if (!rep.passed())
        throw InternalError("root system violates the pentachoron product identity at " + rep.failures().front().location);
    return roots;
}

// ---------------------------------------------------------------------------
// Per-tetrahedron coefficients

/// Coefficients on one unoriented tetrahedron in its ascending reference
/// orientation. Edges are the six ascending pairs in lexicographic order.
struct TetrahedronCoefficients {
    int index = -1;
    Tetrahedron t{};
    std::array<Edge, 6> edges{};
    std::array<Complex, 6> psi{};
    std::array<Complex, 6> beta{};
    std::array<Complex, 6> gamma{};  // already divided by rho
    Complex k_root;                  // K on the reference orientation
    Complex c;                       // c_t on the reference orientation
    Complex rho;                     // normalization probe before rescaling

    /// Slot of an edge and the sign of its orientation relative to ascending.
    std::pair<int, int> slot(const Edge& b) const {
        const auto key = sorted(b);
        for (int i = 0; i < 6; ++i)
            if (edges[i] == key) return {i, permutation_sign(b)};
        throw ContractViolation("edge [" + to_string(b) + "] is not in tetrahedron [" + to_string(t) + "]");
    }

    Complex beta_of(const Edge& b) const {
        const auto [i, s] = slot(b);
        return static_cast<double>(s) * beta[i];
    }

    Complex gamma_of(const Edge& b) const {
        const auto [i, s] = slot(b);
        return static_cast<double>(s) * gamma[i];
    }
};

using CoefficientTable = std::vector<TetrahedronCoefficients>;

/// Evaluates the closed forms with the tetrahedron written as the oriented
/// tuple `frame` and `k_frame` the root on that orientation. The gammas are
/// rescaled so that omega_s <d_b1|d_b2>_t = 1 for s the first three vertices
/// of the frame and b1, b2 its two edges leaving the first vertex. Results
/// are reported on the ascending edges, for the orientation of `frame`.
template <typename Omega>
TetrahedronCoefficients coefficients_in_frame(const Omega& w, const Tetrahedron& frame, Complex k_frame) {
    TetrahedronCoefficients out;
    out.t = sorted(frame);
    const int frame_sign = permutation_sign(frame);
    out.k_root = static_cast<double>(frame_sign) * k_frame;
    const auto subs = detail::k_subsets<2>(out.t);
    std::copy(subs.begin(), subs.end(), out.edges.begin());
    const auto [i0, j0, k0, l0] = frame;
    out.c = formulas::c_factor(w, i0, j0, k0, l0);
    const double c_scale = formulas::c_factor_scale(w, i0, j0, k0, l0);
    if (std::abs(out.c) <= 1e-12 * c_scale) throw GenericityError("c_t vanishes", to_string(out.t));
    std::array<Complex, 6> gamma_raw{};
    for (int e = 0; e < 6; ++e) {
        const auto [a, b] = out.edges[e];
        Vertex rest[2];
        int n = 0;
        for (Vertex v : out.t)
            if (v != a && v != b) rest[n++] = v;
        const Tetrahedron local{a, b, rest[0], rest[1]};
        // root on the orientation abkl
        const Complex k_local = static_cast<double>(permutation_sign(local)) * out.k_root;
        const auto terms = formulas::edge_terms(w, a, b, rest[0], rest[1]);
        out.psi[e] = formulas::psi(w, a, b, rest[0], rest[1]);
        out.beta[e] = terms.beta(k_local);
        gamma_raw[e] = terms.gamma_unscaled(k_local) / out.c;
    }
    auto beta_of = [&](Vertex a, Vertex b) {
        const auto [e, s] = out.slot(Edge{a, b});
        return static_cast<double>(s) * out.beta[e];
    };
    auto gamma_of = [&](Vertex a, Vertex b) {
        const auto [e, s] = out.slot(Edge{a, b});
        return static_cast<double>(s) * gamma_raw[e];
    };
    out.rho = w(i0, j0, k0) * (beta_of(i0, j0) * gamma_of(i0, k0) + beta_of(i0, k0) * gamma_of(i0, j0));
    double rho_scale = 0.0;
    for (int e = 0; e < 6; ++e) rho_scale = std::max(rho_scale, std::abs(out.beta[e] * gamma_raw[e]));
    if (std::abs(out.rho) <= 1e-12 * rho_scale * std::abs(w(i0, j0, k0)))
        throw GenericityError("normalization probe vanishes", to_string(out.t));
    for (int e = 0; e < 6; ++e) out.gamma[e] = gamma_raw[e] / out.rho;
    return out;
}

inline TetrahedronCoefficients tetra_coefficients(const Triangulation& tri, const Cocycle2& omega, const RootSystem& roots,
                                                  int t) {
    auto w = omega_accessor(tri, omega);
    auto out = coefficients_in_frame(w, tri.tetrahedra().at(t), roots.k.at(t));
    out.index = t;
    return out;
}

inline CoefficientTable coefficient_table(const Triangulation& tri, const Cocycle2& omega, const RootSystem& roots) {
    CoefficientTable table;
    table.reserve(tri.count(3));
    for (int t = 0; t < tri.count(3); ++t) table.push_back(tetra_coefficients(tri, omega, roots, t));
    return table;
}

/// Per-tetrahedron rescaling beta -> lambda beta, gamma -> gamma / lambda.
inline CoefficientTable apply_gauge(CoefficientTable table, const std::vector<Complex>& lambda) {
    if (lambda.size() != table.size()) throw ContractViolation("gauge needs one factor per tetrahedron");
    for (std::size_t t = 0; t < table.size(); ++t) {
        if (lambda[t] == Complex{}) throw ContractViolation("gauge factor must be nonzero");
        for (int e = 0; e < 6; ++e) {
            table[t].beta[e] *= lambda[t];
            table[t].gamma[e] /= lambda[t];
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Local edge operators

struct LocalEdgeOperator {
    struct Entry {
        int tetrahedron = -1;
        int slot = -1;  // position among the five tetrahedra of u
        Complex beta;
        Complex gamma;  // for the orientation induced from u
    };

    int u = -1;
    Edge b{};
    std::array<Entry, 3> entries{};

    const Entry* at(int tetrahedron) const {
        for (const auto& e : entries)
            if (e.tetrahedron == tetrahedron) return &e;
        return nullptr;
    }

    /// As an operator on the five generators of u (face opposite the lowest
    /// vertex first).
    grassmann::LinearOperatorSpec spec() const {
        grassmann::LinearOperatorSpec d(5);
        for (const auto& e : entries) {
            d.beta[e.slot] = e.beta;
            d.gamma[e.slot] = e.gamma;
        }
        return d;
    }
};

inline LocalEdgeOperator local_edge_operator(const Triangulation& tri, const CoefficientTable& coeffs, int u, const Edge& b) {
    const auto& pu = tri.pentachora().at(u);
    if (!contains(pu, b[0]) || !contains(pu, b[1]) || b[0] == b[1])
        throw ContractViolation("edge [" + to_string(b) + "] is not in pentachoron [" + to_string(pu) + "]");
    LocalEdgeOperator op;
    op.u = u;
    op.b = b;
    int n = 0;
    const auto& tets = tri.pentachoron_tetrahedra(u);
    for (int p = 0; p < 5; ++p) {
        const auto& t = tri.tetrahedra()[tets[p]];
        if (!contains(t, b[0]) || !contains(t, b[1])) continue;
        const auto& c = coeffs.at(tets[p]);
        op.entries.at(n++) = {tets[p], p, c.beta_of(b),
                              static_cast<double>(induced_orientation_sign(tri, u, tets[p])) * c.gamma_of(b)};
    }
    return op;
}

/// The ten edge operators of u on ascending edges in lexicographic order.
struct PentachoronOperators {
    int u = -1;
    std::array<LocalEdgeOperator, 10> ops{};

    /// Operator for an oriented edge of u (negated when descending).
    LocalEdgeOperator edge(const Edge& b) const {
        const auto key = sorted(b);
        for (const auto& op : ops)
            if (op.b == key) {
                if (key == b) return op;
                LocalEdgeOperator neg = op;
                neg.b = b;
                for (auto& e : neg.entries) {
                    e.beta = -e.beta;
                    e.gamma = -e.gamma;
                }
                return neg;
            }
        throw ContractViolation("edge [" + to_string(b) + "] is not in the pentachoron");
    }

    /// 10 x 5 matrices of beta and gamma parts (rows: edges, cols: tetrahedra).
    Matrix beta_matrix() const { return part_matrix(true); }
    Matrix gamma_matrix() const { return part_matrix(false); }

private:
    Matrix part_matrix(bool beta) const {
        Matrix m = Matrix::Zero(10, 5);
        for (int r = 0; r < 10; ++r)
            for (const auto& e : ops[r].entries) m(r, e.slot) = beta ? e.beta : e.gamma;
        return m;
    }
};

inline PentachoronOperators pentachoron_operators(const Triangulation& tri, const CoefficientTable& coeffs, int u) {
    PentachoronOperators out;
    out.u = u;
    const auto edges = tri.pentachoron_edges(u);
    for (int i = 0; i < 10; ++i) out.ops[i] = local_edge_operator(tri, coeffs, u, tri.edges()[edges[i]]);
    return out;
}

/// <d1|d2>_t = beta1 gamma2 + beta2 gamma1 at tetrahedron t (zero if either
/// operator has no t-component).
inline Complex partial_scalar(const LocalEdgeOperator& d1, const LocalEdgeOperator& d2, int t) {
    const auto* a = d1.at(t);
    const auto* b = d2.at(t);
    if (!a || !b) return {};
    return a->beta * b->gamma + b->beta * a->gamma;
}

inline Complex scalar_product(const LocalEdgeOperator& d1, const LocalEdgeOperator& d2) {
    Complex total;
    for (const auto& e : d1.entries) total += partial_scalar(d1, d2, e.tetrahedron);
    return total;
}

/// Sum of |beta1 gamma2| + |beta2 gamma1| over shared tetrahedra; the scale of
/// the cancellation in scalar_product.
inline double scalar_product_scale(const LocalEdgeOperator& d1, const LocalEdgeOperator& d2) {
    double s = 0.0;
    for (const auto& a : d1.entries)
        if (const auto* b = d2.at(a.tetrahedron)) s += std::abs(a.beta * b->gamma) + std::abs(b->beta * a.gamma);
    return s;
}

/// Expected 6x6 table of <d_a|d_b>_t for t ascending abcd inside u, rows and
/// columns the edges ab, ac, ad, bc, bd, cd. Signs follow the orientation
/// induced on t by u.
inline Matrix expected_scalar_table(const Triangulation& tri, const Cocycle2& omega, int u, int t) {
    const auto [v1, v2, v3, v4] = tri.tetrahedra().at(t);
    auto inv = [&](Vertex a, Vertex b, Vertex c) { return 1.0 / omega.values[tri.index(Triangle{a, b, c})]; };
    const Complex w123 = inv(v1, v2, v3), w124 = inv(v1, v2, v4), w134 = inv(v1, v3, v4), w234 = inv(v2, v3, v4);
    const Complex z{};
    Matrix m(6, 6);
    m << w124 - w123, w123, -w124, -w123, w124, z,
         w123, -w134 - w123, w134, w123, z, -w134,
         -w124, w134, w124 - w134, z, -w124, w134,
         -w123, w123, z, w234 - w123, -w234, w234,
         w124, z, -w124, -w234, w124 + w234, -w234,
         z, -w134, w134, w234, -w234, w234 - w134;
    return static_cast<double>(induced_orientation_sign(tri, u, t)) * m;
}

/// omega_s <d_b1|d_b2>_t for every admissible probe of every t < u: t with the
/// orientation induced from u, s any face with (s, remaining vertex) = t, and
/// b1, b2 the edges of s leaving any of its vertices in its orientation.
inline Report normalization_probes(const Triangulation& tri, const Cocycle2& omega, const PentachoronOperators& ops,
                                   double tol = 1e-9) {
    Report rep;
    const int u = ops.u;
    for (int t : tri.pentachoron_tetrahedra(u)) {
        Tetrahedron oriented = tri.tetrahedra()[t];
        if (induced_orientation_sign(tri, u, t) < 0) std::swap(oriented[0], oriented[1]);
        for (Vertex apex : oriented) {
            Triangle s{};
            int n = 0;
            for (Vertex v : oriented)
                if (v != apex) s[n++] = v;
            s = sorted(s);
            if (face_sign_last(oriented, apex) < 0) std::swap(s[0], s[1]);
            // s now carries the induced orientation; rotate through its vertices
            for (int r = 0; r < 3; ++r) {
                const Triangle rot{s[r], s[(r + 1) % 3], s[(r + 2) % 3]};
                const Complex value = oriented_value(tri, omega, rot) *
                                      partial_scalar(ops.edge({rot[0], rot[1]}), ops.edge({rot[0], rot[2]}), t);
                rep.add("normalization", std::abs(value - 1.0), tol,
                        to_string(tri.tetrahedra()[t]) + " in " + to_string(tri.pentachora()[u]) + " via " + to_string(rot));
            }
        }
    }
    return rep;
}

/// All linear relations and scalar-product identities of the ten operators of u.
inline Report verify_edge_relations(const Triangulation& tri, const Cocycle2& omega, const PentachoronOperators& ops,
                                    double tol = 1e-9) {
    Report rep;
    const int u = ops.u;
    const auto& pu = tri.pentachora()[u];
    const std::string where = to_string(pu);

    double iso = 0.0;
    for (int a = 0; a < 10; ++a)
        for (int b = a; b < 10; ++b) {
            const double scale = scalar_product_scale(ops.ops[a], ops.ops[b]);
            if (scale > 0.0) iso = std::max(iso, std::abs(scalar_product(ops.ops[a], ops.ops[b])) / scale);
        }
    rep.add("isotropy", iso, tol, where);

    // |sum_k c_k d_k| relative to sum_k |c_k d_k|, per slot and part
    auto combination_residual = [&](const std::vector<std::pair<Complex, LocalEdgeOperator>>& terms) {
        double worst = 0.0;
        for (int part = 0; part < 2; ++part)
            for (int slot = 0; slot < 5; ++slot) {
                Complex sum;
                double scale = 0.0;
                for (const auto& [c, d] : terms)
                    for (const auto& e : d.entries)
                        if (e.slot == slot) {
                            const Complex v = c * (part == 0 ? e.beta : e.gamma);
                            sum += v;
                            scale += std::abs(v);
                        }
                if (scale > 0.0) worst = std::max(worst, std::abs(sum) / scale);
            }
        return worst;
    };

    for (Vertex i : pu) {
        std::vector<std::pair<Complex, LocalEdgeOperator>> terms;
        for (Vertex j : pu)
            if (j != i) terms.push_back({1.0, ops.edge({i, j})});
        rep.add("vertex_relation", combination_residual(terms), tol, where + " vertex " + std::to_string(i));
    }

    const auto nu = local_coboundary_solve(tri, u, omega);
    std::vector<std::pair<Complex, LocalEdgeOperator>> terms;
    for (int i = 0; i < 10; ++i) terms.push_back({nu[i], ops.ops[i]});
    rep.add("cocycle_relation", combination_residual(terms), tol, where);

    for (int t : tri.pentachoron_tetrahedra(u)) {
        const auto& tk = tri.tetrahedra()[t];
        const auto edges = detail::k_subsets<2>(tk);
        Matrix actual(6, 6);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) actual(a, b) = partial_scalar(ops.edge(edges[a]), ops.edge(edges[b]), t);
        const Matrix expected = expected_scalar_table(tri, omega, u, t);
        rep.add("sc_table", linalg::max_abs(actual - expected) / linalg::max_abs(expected), tol,
                to_string(tk) + " in " + where);
    }

    // columns are tetrahedra; equilibrating them removes the gauge
    const auto rb = linalg::numerical_rank(linalg::equilibrate_columns(ops.beta_matrix()));
    const auto rg = linalg::numerical_rank(linalg::equilibrate_columns(ops.gamma_matrix()));
    rep.add_flag("beta_rank_5", rb.rank == 5, where + " rank " + std::to_string(rb.rank));
    rep.add_flag("gamma_rank_4", rg.rank == 4, where + " rank " + std::to_string(rg.rank));
    rep.add("beta_rank_gap", 1.0 / rb.gap, min_rank_gap_inverse, where);
    rep.add("gamma_rank_gap", 1.0 / rg.gap, min_rank_gap_inverse, where);

    rep.append(normalization_probes(tri, omega, ops, tol));
    return rep;
}

/// beta equal and gamma opposite across the two pentachora of every
/// tetrahedron, for every edge of it.
inline Report cross_coface_check(const Triangulation& tri, const std::vector<PentachoronOperators>& all, double tol = 1e-9) {
    Report rep;
    for (int t = 0; t < tri.count(3); ++t) {
        const auto& cof = tri.tetrahedron_cofaces(t);
        if (cof.size() != 2) continue;
        double rb = 0.0, rg = 0.0;
        for (const auto& b : detail::k_subsets<2>(tri.tetrahedra()[t])) {
            const auto d0 = all.at(cof[0]).edge(b);
            const auto d1 = all.at(cof[1]).edge(b);
            const auto* e0 = d0.at(t);
            const auto* e1 = d1.at(t);
            if (!e0 || !e1) throw InternalError("edge operator lacks a component at its own tetrahedron");
            rb = std::max(rb, std::abs(e0->beta - e1->beta) / std::max(std::abs(e0->beta), 1e-300));
            rg = std::max(rg, std::abs(e0->gamma + e1->gamma) / std::max(std::abs(e0->gamma), 1e-300));
        }
        rep.add("coface_beta", rb, tol, to_string(tri.tetrahedra()[t]));
        rep.add("coface_gamma", rg, tol, to_string(tri.tetrahedra()[t]));
    }
    return rep;
}

}  // namespace exotic
