#pragma once

// Superisotropic combinations g^(t) of the edge operators of a pentachoron,
// the antisymmetric matrix F read off from them, and the Grassmann-Gaussian
// weight exp(-1/2 theta^T F theta) that all edge operators annihilate.

#include "exotic/edgeops.hpp"

#include <bit>
#include <functional>
#include <random>

namespace exotic {

/// One tetrahedron component beta d/dtheta + gamma theta of a combination of
/// edge operators, with the magnitude sums that bound the cancellation in
/// each part.
struct Component {
    Complex beta;
    Complex gamma;
    double beta_scale = 0.0;
    double gamma_scale = 0.0;

    bool pure_derivative(double tol) const { return std::abs(gamma) <= tol * gamma_scale && !vanishes(tol); }
    bool pure_multiplication(double tol) const { return std::abs(beta) <= tol * beta_scale && !vanishes(tol); }
    bool vanishes(double tol) const {
        return std::abs(beta) <= tol * beta_scale && std::abs(gamma) <= tol * gamma_scale;
    }
};

struct CombinedOperator {
    std::array<Complex, 10> alpha{};  // per ascending edge of u, lexicographic
    std::array<Component, 5> components{};
};

/// Components of sum_b alpha_b d_b.
inline CombinedOperator combine(const PentachoronOperators& ops, const std::array<Complex, 10>& alpha) {
    CombinedOperator g;
    g.alpha = alpha;
    for (int b = 0; b < 10; ++b)
        for (const auto& e : ops.ops[b].entries) {
            auto& c = g.components[e.slot];
            const Complex vb = alpha[b] * e.beta, vg = alpha[b] * e.gamma;
            c.beta += vb;
            c.gamma += vg;
            c.beta_scale += std::abs(vb);
            c.gamma_scale += std::abs(vg);
        }
    return g;
}

/// The combination with coefficients prod_{s > b} omega_s / prod_{t' > b} eps_t' K_t',
/// faces s of u through b oriented to start with b, K on the orientation
/// induced from u, and eps indexed by local tetrahedron position.
inline CombinedOperator superisotropic_operator(const Triangulation& tri, const Cocycle2& omega, const RootSystem& roots,
                                                const PentachoronOperators& ops, const std::array<int, 5>& eps) {
    const int u = ops.u;
    const auto key = tri.sorted_pentachoron(u);
    const auto& tets = tri.pentachoron_tetrahedra(u);
    std::array<Complex, 10> alpha{};
    for (int b = 0; b < 10; ++b) {
        const auto [i, j] = ops.ops[b].b;
        Complex num = 1.0;
        for (Vertex k : key)
            if (k != i && k != j) num *= oriented_value(tri, omega, Triangle{i, j, k});
        Complex den = 1.0;
        for (int p = 0; p < 5; ++p) {
            const auto& t = tri.tetrahedra()[tets[p]];
            if (!contains(t, i) || !contains(t, j)) continue;
            den *= static_cast<double>(eps[p] * induced_orientation_sign(tri, u, tets[p])) * roots.k[tets[p]];
        }
        alpha[b] = num / den;
    }
    return combine(ops, alpha);
}

struct SuperisotropicSystem {
    int u = -1;
    std::array<int, 5> tetrahedra{};
    CombinedOperator base;                // all eps = +1
    std::array<CombinedOperator, 5> g{};  // g[p]: eps = -1 away from position p
    std::array<Complex, 5> beta{};        // d/dtheta part of g[p] at p
    Matrix gamma = Matrix::Zero(5, 5);    // gamma(p, q): theta part of g[p] at q
};

/// Builds the five g^(t). Throws InternalError naming u and t if a component
/// is mixed, and GenericityError if some beta_t vanishes.
inline SuperisotropicSystem superisotropic_ops(const Triangulation& tri, const Cocycle2& omega, const RootSystem& roots,
                                               const PentachoronOperators& ops, double tol = 1e-9) {
    SuperisotropicSystem sys;
    sys.u = ops.u;
    sys.tetrahedra = tri.pentachoron_tetrahedra(ops.u);
    const std::string where = to_string(tri.pentachora()[ops.u]);
    auto name = [&](int p) { return to_string(tri.tetrahedra()[sys.tetrahedra[p]]); };
    auto require_unmixed = [&](const CombinedOperator& g, int p) {
        for (int q = 0; q < 5; ++q) {
            const auto& c = g.components[q];
            if (!c.pure_derivative(tol) && !c.pure_multiplication(tol) && !c.vanishes(tol))
                throw InternalError("sign-system inconsistency: mixed component at " + name(q) + " of g^(" +
                                    (p < 0 ? std::string("base") : name(p)) + ") in " + where);
        }
    };
    sys.base = superisotropic_operator(tri, omega, roots, ops, {1, 1, 1, 1, 1});
    require_unmixed(sys.base, -1);
    for (int p = 0; p < 5; ++p) {
        std::array<int, 5> eps{-1, -1, -1, -1, -1};
        eps[p] = 1;
        sys.g[p] = superisotropic_operator(tri, omega, roots, ops, eps);
        require_unmixed(sys.g[p], p);
        sys.beta[p] = sys.g[p].components[p].beta;
        if (std::abs(sys.beta[p]) <= tol * sys.g[p].components[p].beta_scale)
            throw GenericityError("beta_t vanishes", name(p) + " in " + where);
        for (int q = 0; q < 5; ++q)
            if (q != p) sys.gamma(p, q) = sys.g[p].components[q].gamma;
    }
    return sys;
}

/// Expected shapes: the base operator is pure d/dtheta everywhere, g^(t) is
/// pure d/dtheta at t and pure theta elsewhere.
inline Report superisotropy_check(const Triangulation& tri, const SuperisotropicSystem& sys, double tol = 1e-9) {
    Report rep;
    const std::string where = to_string(tri.pentachora()[sys.u]);
    double base = 0.0, diag = 0.0, off = 0.0;
    for (int q = 0; q < 5; ++q) {
        const auto& c = sys.base.components[q];
        base = std::max(base, std::abs(c.gamma) / c.gamma_scale);
    }
    for (int p = 0; p < 5; ++p)
        for (int q = 0; q < 5; ++q) {
            const auto& c = sys.g[p].components[q];
            if (p == q) diag = std::max(diag, std::abs(c.gamma) / c.gamma_scale);
            else off = std::max(off, std::abs(c.beta) / c.beta_scale);
        }
    rep.add("superisotropy_base", base, tol, where);
    rep.add("superisotropy_diagonal", diag, tol, where);
    rep.add("superisotropy_offdiagonal", off, tol, where);
    return rep;
}

struct PentachoronWeight {
    int u = -1;
    std::array<int, 5> tetrahedra{};  // face opposite the lowest vertex first
    Matrix f = Matrix::Zero(5, 5);
    double antisymmetry_residual = 0.0;  // max |F_pq + F_qp| over max |F|, before mirroring

    grassmann::Element weight() const { return grassmann::exp_quadratic(f); }
};

inline PentachoronWeight pentachoron_F(const Triangulation& tri, const SuperisotropicSystem& sys, double tol = 1e-9) {
    PentachoronWeight w;
    w.u = sys.u;
    w.tetrahedra = sys.tetrahedra;
    Matrix raw = Matrix::Zero(5, 5);
    for (int p = 0; p < 5; ++p) {
        if (sys.beta[p] == Complex{})
            throw GenericityError("beta_t vanishes", to_string(tri.tetrahedra()[sys.tetrahedra[p]]));
        for (int q = 0; q < 5; ++q)
            if (q != p) raw(p, q) = sys.gamma(p, q) / sys.beta[p];
    }
    const double scale = linalg::max_abs(raw);
    w.antisymmetry_residual = scale > 0.0 ? linalg::max_abs(raw + raw.transpose()) / scale : 0.0;
    if (w.antisymmetry_residual > tol)
        throw InternalError("F fails antisymmetry in " + to_string(tri.pentachora()[sys.u]) + " (residual " +
                            std::to_string(w.antisymmetry_residual) + ")");
    for (int p = 0; p < 5; ++p)
        for (int q = p + 1; q < 5; ++q) {
            w.f(p, q) = raw(p, q);
            w.f(q, p) = -raw(p, q);
        }
    return w;
}

/// Largest |r_m| / bound_m over monomials m, where bound is the same
/// expression evaluated on magnitudes; a monomial with zero bound must
/// vanish exactly.
inline double monomial_relative_residual(const grassmann::Element& r, const grassmann::Element& bound) {
    double worst = 0.0;
    for (const auto& [m, c] : r.terms()) {
        const double b = std::abs(bound.coefficient(m));
        worst = std::max(worst, b > 0.0 ? std::abs(c) / b : std::numeric_limits<double>::infinity());
    }
    return worst;
}

/// Coefficientwise bound on exp(-1/2 theta^T F theta) given entry magnitudes
/// m_pq >= |F_pq|: each even monomial gets the sum over its perfect matchings
/// of prod m_pq.
inline grassmann::Element weight_magnitude_bound(const Eigen::MatrixXd& f) {
    const int n = static_cast<int>(f.rows());
    grassmann::Element out(n);
    for (grassmann::Mask m = 0; m < (grassmann::Mask{1} << n); ++m) {
        if (std::popcount(m) % 2) continue;
        // matchings(m): pair the lowest generator with each other one
        std::function<double(grassmann::Mask)> matchings = [&](grassmann::Mask s) -> double {
            if (!s) return 1.0;
            const int i = std::countr_zero(s);
            const grassmann::Mask rest = s & (s - 1);
            double total = 0.0;
            for (grassmann::Mask r = rest; r; r &= r - 1) {
                const int j = std::countr_zero(r);
                total += f(i, j) * matchings(rest & ~(grassmann::Mask{1} << j));
            }
            return total;
        };
        const double c = matchings(m);
        if (c > 0.0) out.add_term(m, c);
    }
    return out;
}

/// Residual of op(W) = 0 measured monomial-wise against |op| applied to the
/// magnitude bound of W, and also as max |op(W)| / max |W|.
inline std::pair<double, double> annihilation_residual(const grassmann::LinearOperatorSpec& op, const grassmann::Element& w,
                                                       const grassmann::Element& w_bound) {
    const auto r = grassmann::apply(op, w);
    const auto bound = grassmann::apply_bound(op, w_bound);
    const double norm = w.max_abs();
    return {monomial_relative_residual(r, bound), norm > 0.0 ? r.max_abs() / norm : 0.0};
}

/// Annihilation of W_u by its ten edge operators, and the identity
/// (sum beta_t d_t) W = -(sum gamma_t theta_t) W for `directions` random local
/// cocycles c = delta(nu) on the triangles of u.
inline Report pentachoron_weight(const Triangulation& tri, const PentachoronWeight& weight, const PentachoronOperators& ops,
                                 double tol = 1e-9, std::uint64_t seed = 1, int directions = 10) {
    Report rep;
    const std::string where = to_string(tri.pentachora()[weight.u]);
    const auto w = weight.weight();
    const auto w_bound = weight_magnitude_bound(weight.f.cwiseAbs());
    for (const auto& op : ops.ops) {
        const auto [monomial, norm] = annihilation_residual(op.spec(), w, w_bound);
        const std::string loc = where + " edge " + to_string(op.b);
        rep.add("annihilation", monomial, tol, loc);
        rep.add("annihilation_norm", norm, tol, loc);
    }

    // rows of p + F theta, as operators d/dtheta_p + sum_q F_pq theta_q
    double rows = 0.0;
    for (int p = 0; p < 5; ++p) {
        grassmann::LinearOperatorSpec d(5);
        d.beta[p] = 1.0;
        for (int q = 0; q < 5; ++q) d.gamma[q] = weight.f(p, q);
        rows = std::max(rows, annihilation_residual(d, w, w_bound).first);
    }
    rep.add("weight_rows", rows, tol, where);

    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(weight.u + 1)));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto tris = tri.pentachoron_triangles(weight.u);
    const Matrix local = local_coboundary_matrix(tri, weight.u);
    double dw = 0.0;
    for (int k = 0; k < directions; ++k) {
        Vector nu(10);
        for (int i = 0; i < 10; ++i) nu(i) = Complex(unit(rng), unit(rng));
        const Vector c_local = local * nu;
        Cocycle2 c;
        c.values.assign(tri.count(2), Complex{});
        for (int i = 0; i < 10; ++i) c.values[tris[i]] = c_local(i);
        const auto solved = local_coboundary_solve(tri, weight.u, c);
        std::array<Complex, 10> coeff{};
        std::copy(solved.begin(), solved.end(), coeff.begin());
        const auto g = combine(ops, coeff);
        grassmann::LinearOperatorSpec lhs(5), rhs(5);
        for (int p = 0; p < 5; ++p) {
            lhs.beta[p] = g.components[p].beta;
            rhs.gamma[p] = g.components[p].gamma;
        }
        auto diff = grassmann::apply(lhs, w);
        diff += grassmann::apply(rhs, w);
        auto bound = grassmann::apply_bound(lhs, w_bound);
        bound += grassmann::apply_bound(rhs, w_bound);
        dw = std::max(dw, monomial_relative_residual(diff, bound));
    }
    rep.add("dw_identity", dw, tol, where);
    return rep;
}

/// F of every pentachoron under a per-tetrahedron gauge lambda must equal
/// F_pq / (lambda_p lambda_q) of the ungauged one.
inline double gauge_transform_residual(const PentachoronWeight& before, const PentachoronWeight& after,
                                       const std::vector<Complex>& lambda) {
    Matrix expected(5, 5);
    for (int p = 0; p < 5; ++p)
        for (int q = 0; q < 5; ++q)
            expected(p, q) = before.f(p, q) / (lambda[before.tetrahedra[p]] * lambda[before.tetrahedra[q]]);
    const double scale = linalg::max_abs(expected);
    return scale > 0.0 ? linalg::max_abs(after.f - expected) / scale : linalg::max_abs(after.f);
}

}  // namespace exotic
