// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "exotic/exotic.hpp"

#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>

using namespace exotic;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

/// All checks whose name starts with one of `prefixes` pass; reports the worst.
Outcome all_pass(const Report& rep, std::initializer_list<const char*> prefixes) {
    bool ok = true;
    std::size_t n = 0;
    double worst = 0.0;
    for (const auto& c : rep.checks)
        for (const char* p : prefixes)
            if (c.name.rfind(p, 0) == 0) {
                ++n;
                ok = ok && c.passed;
                worst = std::max(worst, c.residual);
                break;
            }
    return {ok && n > 0, std::to_string(n) + " checks, worst " + sci(worst)};
}

Outcome both(const Outcome& a, const Outcome& b) { return {a.passed && b.passed, a.detail + "; " + b.detail}; }

struct Case {
    const char* name;
    Triangulation tri;
    GeneratedCocycle cocycle;
    ExoticComplex cx;
    DiagnosticsReport suite;
};

Case make_case(const char* name, std::vector<Pentachoron> list, std::uint64_t seed) {
    auto tri = Triangulation::build(std::move(list));
    auto g = generate_generic_cocycle(tri, seed);
    auto cx = build_exotic_complex(tri, g.omega);
    SuiteOptions o;
    o.seed = seed;
    auto suite = run_invariant_suite(tri, g.omega, o);
    return {name, std::move(tri), std::move(g), std::move(cx), std::move(suite)};
}

Outcome grassmann_oracle() {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Matrix f = Matrix::Zero(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                f(i, j) = Complex(normal(rng), normal(rng));
                f(j, i) = -f(i, j);
            }
        const auto w = grassmann::exp_quadratic(f);
        const auto bound = weight_magnitude_bound(f.cwiseAbs());
        for (int p = 0; p < 5; ++p) {
            grassmann::LinearOperatorSpec row(5);
            row.beta[p] = 1.0;
            for (int q = 0; q < 5; ++q) row.gamma[q] = f(p, q);
            worst = std::max(worst, annihilation_residual(row, w, bound).first);
        }
    }
    return {worst < 1e-12, "500 rows, worst " + sci(worst)};
}

Outcome edge_relations(const Case& c) {
    Report rep;
    for (const auto& ops : c.cx.operators) rep.append(verify_edge_relations(c.tri, c.cx.omega, ops));
    return all_pass(rep, {"isotropy", "vertex_relation", "cocycle_relation", "sc_table"});
}

Outcome normalization(const Case& c) {
    Report rep;
    for (const auto& ops : c.cx.operators) rep.append(normalization_probes(c.tri, c.cx.omega, ops));
    return all_pass(rep, {"normalization"});
}

Outcome root_system_product(const Case& c) { return all_pass(five_k_check(c.tri, c.cx.omega, c.cx.roots), {"five_k"}); }

/// On a positively oriented 12345 the induced orientation is flipped on
/// 1235 and 1345 only, and prod eps_t K_t equals the product of the ten omegas.
Outcome sign_pattern(const Case& c) {
    const Pentachoron u{1, 2, 3, 4, 5};
    bool pattern = true;
    Complex lhs = 1.0, rhs = 1.0;
    for (const auto& t : detail::k_subsets<4>(u)) {
        const bool flipped = t == Tetrahedron{1, 2, 3, 5} || t == Tetrahedron{1, 3, 4, 5};
        const int eps = induced_orientation_sign(u, t);
        pattern = pattern && eps == (flipped ? -1 : 1);
        lhs *= static_cast<double>(eps) * c.cx.roots.k[c.tri.index(t)];
    }
    for (const auto& s : detail::k_subsets<3>(u)) rhs *= c.cx.omega.values[c.tri.index(s)];
    const double r = std::abs(lhs - rhs) / std::abs(rhs);
    return {pattern && r < 1e-9, std::string("12345 signs ") + (pattern ? "(+,-,+,-,+)" : "wrong") + ", product " + sci(r)};
}

Outcome weights(const Case& c) {
    Report rep;
    bool exact = true;
    for (int u = 0; u < c.tri.count(4); ++u) {
        exact = exact && c.cx.weights[u].f == Matrix(-c.cx.weights[u].f.transpose());
        rep.append(pentachoron_weight(c.tri, c.cx.weights[u], c.cx.operators[u], 1e-9, c.cocycle.seed, 10));
    }
    auto o = all_pass(rep, {"annihilation", "annihilation_norm", "dw_identity"});
    std::size_t annihilations = 0;
    for (const auto& ch : rep.checks) annihilations += ch.name == "annihilation_norm";
    o.passed = o.passed && exact;
    o.detail = std::to_string(annihilations) + " annihilations, F exact " + (exact ? "yes" : "no") + ", " + o.detail;
    return o;
}

Outcome ranks(const Case& c) {
    return all_pass(c.suite.checks, {"f2_restriction_rank_5", "g2_restriction_rank_4", "f2_restriction_gap",
                                     "g2_restriction_gap", "beta_rank", "gamma_rank"});
}

Outcome chain(const Case& c) {
    return all_pass(c.suite.checks, {"chain_f2f1", "chain_g2f1", "chain_f3f2", "chain_norm_f2f1", "chain_norm_g2f1",
                                     "chain_norm_f3f2"});
}

Outcome gauge(const Case& c) {
    return all_pass(c.suite.checks, {"gauge/isotropy", "gauge/vertex_relation", "gauge/cocycle_relation",
                                     "gauge/sc_table", "gauge/normalization", "gauge/annihilation", "gauge/dw_identity",
                                     "gauge/f_antisymmetry", "gauge/f_transform"});
}

Outcome tree(const Case& c) { return all_pass(c.suite.checks, {"tree_transition_det", "tree_transition_integral"}); }

/// Table-level agreement of beta and induced-orientation gamma, plus the
/// values each coface produces from its own local primitive of every basis
/// cocycle of Z^2.
Outcome cofaces(const Case& c) {
    Report rep = c.suite.checks;
    cocycle_columns(c.tri, c.cx.operators, c.cx.bases.matrix, 1e-9, &rep);
    return all_pass(rep, {"coface_beta", "coface_gamma", "f2_coface", "g2_coface"});
}

}  // namespace

int main() {
    std::optional<Case> sphere, cp2;
    std::string setup_error;
    try {
        sphere = make_case("boundary-5-simplex", builtin::boundary_5_simplex(), 7);
        cp2 = make_case("cp2-9", builtin::cp2_9(), 3);
    } catch (const std::exception& e) {
        setup_error = e.what();
    }
    auto needs = [&](const std::function<Outcome()>& f) {
        return [&, f] { return setup_error.empty() ? f() : Outcome{false, "setup failed: " + setup_error}; };
    };
    auto on_both = [&](const std::function<Outcome(const Case&)>& f) { return both(f(*sphere), f(*cp2)); };

    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"Grassmann oracle", grassmann_oracle},
        {"edge relations on the sphere", needs([&] { return edge_relations(*sphere); })},
        {"normalization", needs([&] { return on_both(normalization); })},
        {"root system", needs([&] { return both(on_both(root_system_product), sign_pattern(*sphere)); })},
        {"weights", needs([&] { return weights(*sphere); })},
        {"restriction ranks", needs([&] { return on_both(ranks); })},
        {"chain property", needs([&] { return on_both(chain); })},
        {"gauge covariance", needs([&] { return on_both(gauge); })},
        {"tree-root stability", needs([&] { return on_both(tree); })},
        {"cross-coface consistency", needs([&] { return on_both(cofaces); })},
    };
    int failed = 0, n = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o{false, ""};
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.passed;
        std::printf("AC%d %s %s: %s\n", ++n, o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
