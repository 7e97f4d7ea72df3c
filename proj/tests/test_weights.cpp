#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace exotic;

namespace {

const Triangulation& reversed_sphere() {
    static const Triangulation tri = [] {
        auto list = builtin::boundary_5_simplex();
        for (auto& u : list) std::swap(u[0], u[1]);
        return Triangulation::build(list);
    }();
    return tri;
}

struct Weights {
    testing::Local local;
    std::vector<SuperisotropicSystem> systems;
    std::vector<PentachoronWeight> weights;
};

Weights weights_of(const Triangulation& tri, const Cocycle2& omega) {
    Weights w{testing::local_data(tri, omega), {}, {}};
    for (int u = 0; u < tri.count(4); ++u) {
        w.systems.push_back(superisotropic_ops(tri, omega, w.local.roots, w.local.ops[u]));
        w.weights.push_back(pentachoron_F(tri, w.systems.back()));
    }
    return w;
}

void print_failures(const Report& rep) {
    for (const auto& f : rep.failures()) UNSCOPED_INFO(f.name << " " << f.residual << " at " << f.location);
}

}  // namespace

TEST_CASE("g^(t) is pure derivative at t and pure multiplication elsewhere", "[weights]") {
    for (const auto* tri : {&testing::boundary(), &testing::cp2()}) {
        const auto g = generate_generic_cocycle(*tri, 5);
        const auto w = weights_of(*tri, g.omega);
        for (const auto& sys : w.systems) {
            const auto rep = superisotropy_check(*tri, sys);
            print_failures(rep);
            CHECK(rep.passed());
            for (int p = 0; p < 5; ++p) {
                CHECK(sys.base.components[p].pure_derivative(1e-9));
                for (int q = 0; q < 5; ++q)
                    CHECK((p == q ? sys.g[p].components[q].pure_derivative(1e-9)
                                  : sys.g[p].components[q].pure_multiplication(1e-9)));
            }
        }
    }
}

TEST_CASE("flipping two signs turns exactly those two components", "[weights]") {
    const auto& tri = testing::cp2();
    const auto g = generate_generic_cocycle(tri, 11);
    const auto l = testing::local_data(tri, g.omega);
    for (int u = 0; u < tri.count(4); u += 6)
        for (int p = 0; p < 5; ++p)
            for (int q = p + 1; q < 5; ++q) {
                std::array<int, 5> eps{1, 1, 1, 1, 1};
                eps[p] = eps[q] = -1;
                const auto op = superisotropic_operator(tri, g.omega, l.roots, l.ops[u], eps);
                for (int r = 0; r < 5; ++r)
                    CHECK((r == p || r == q ? op.components[r].pure_multiplication(1e-9)
                                            : op.components[r].pure_derivative(1e-9)));
            }
}

TEST_CASE("F is exactly antisymmetric and solves the degree-one annihilation equations", "[weights]") {
    // Degree one of (sum_t beta_bt d_t + gamma_bt theta_t) W = 0 reads
    // sum_t beta_bt F_tq = gamma_bq: ten equations per column of F.
    for (const auto* tri : {&testing::boundary(), &testing::cp2()}) {
        const auto g = generate_generic_cocycle(*tri, 8);
        const auto w = weights_of(*tri, g.omega);
        for (int u = 0; u < tri->count(4); ++u) {
            const auto& f = w.weights[u].f;
            CHECK(f == Matrix(-f.transpose()));
            CHECK(w.weights[u].antisymmetry_residual < 1e-9);
            const Matrix b = w.local.ops[u].beta_matrix();
            const Matrix gamma = w.local.ops[u].gamma_matrix();
            const Matrix oracle = b.colPivHouseholderQr().solve(gamma);
            CHECK(linalg::max_abs(oracle - f) < 1e-7 * linalg::max_abs(f));
        }
    }
}

TEST_CASE("demo cocycle weight on 12345 is stable", "[weights]") {
    // regression values; their correctness is covered by the annihilation tests
    const auto& tri = reversed_sphere();
    const auto omega = testing::demo_omega(tri);
    const auto w = weights_of(tri, omega);
    const int u = testing::pentachoron_index(tri, {1, 2, 3, 4, 5});
    const auto& f = w.weights[u].f;
    const double expected[5][5] = {
        {0, 5.7634964051644896e-13, -5.1499331538733645e-11, 9.0921762318233394e-11, -2.8933933495691024e-10},
        {0, 0, 1.7731352301152035e-11, -3.2854270649984597e-11, 1.0855414757535369e-10},
        {0, 0, 0, 1.5328874262354413e-10, -5.2760641846992729e-10},
        {0, 0, 0, 0, 2.2986273851013189e-11},
        {0, 0, 0, 0, 0}};
    for (int p = 0; p < 5; ++p)
        for (int q = p + 1; q < 5; ++q) {
            CHECK(std::abs(f(p, q) - expected[p][q]) < 1e-9 * std::abs(expected[p][q]));
            CHECK(f(q, p) == -f(p, q));
        }
}

TEST_CASE("all edge operators annihilate the weight", "[weights]") {
    for (const auto* tri : {&testing::boundary(), &reversed_sphere(), &testing::cp2()}) {
        for (std::uint64_t seed : {1u, 13u}) {
            const auto g = generate_generic_cocycle(*tri, seed);
            const auto w = weights_of(*tri, g.omega);
            for (int u = 0; u < tri->count(4); ++u) {
                const auto rep = pentachoron_weight(*tri, w.weights[u], w.local.ops[u], 1e-9, seed);
                print_failures(rep);
                CHECK(rep.passed());
                CHECK(rep.max_residual("annihilation") < 1e-9);
                CHECK(rep.max_residual("dw_identity") < 1e-9);
            }
        }
    }
}

TEST_CASE("a perturbed F is caught by the annihilation check", "[weights]") {
    const auto& tri = testing::boundary();
    const auto g = generate_generic_cocycle(tri, 3);
    auto w = weights_of(tri, g.omega);
    auto weight = w.weights[2];
    weight.f(0, 3) *= 1.0 + 1e-6;
    weight.f(3, 0) = -weight.f(0, 3);
    const auto rep = pentachoron_weight(tri, weight, w.local.ops[2]);
    CHECK_FALSE(rep.passed());
    CHECK(rep.max_residual("annihilation") > 1e-9);
}

TEST_CASE("gauge transforms F entrywise", "[weights]") {
    const auto& tri = testing::cp2();
    const auto g = generate_generic_cocycle(tri, 6);
    const auto plain = weights_of(tri, g.omega);
    const auto lambda = random_gauge(tri.count(3), 42);
    const auto coeffs = apply_gauge(plain.local.coeffs, lambda);
    for (int u = 0; u < tri.count(4); ++u) {
        const auto ops = pentachoron_operators(tri, coeffs, u);
        const auto sys = superisotropic_ops(tri, g.omega, plain.local.roots, ops);
        const auto gauged = pentachoron_F(tri, sys);
        CHECK(gauge_transform_residual(plain.weights[u], gauged, lambda) < 1e-9);
        CHECK(pentachoron_weight(tri, gauged, ops).passed());
    }
}

TEST_CASE("vanishing beta_t is a genericity failure", "[weights]") {
    const auto& tri = testing::boundary();
    const auto g = generate_generic_cocycle(tri, 1);
    auto sys = weights_of(tri, g.omega).systems[0];
    sys.beta[2] = 0.0;
    CHECK_THROWS_AS(pentachoron_F(tri, sys), GenericityError);
}

TEST_CASE("asymmetric gamma is an internal error", "[weights]") {
    const auto& tri = testing::boundary();
    const auto g = generate_generic_cocycle(tri, 1);
    auto sys = weights_of(tri, g.omega).systems[0];
    sys.gamma(1, 3) *= 2.0;
    CHECK_THROWS_AS(pentachoron_F(tri, sys), InternalError);
}

TEST_CASE("magnitude bound dominates the weight", "[weights]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix f = testing::random_antisymmetric(5, rng);
        const auto w = grassmann::exp_quadratic(f);
        const auto bound = weight_magnitude_bound(f.cwiseAbs());
        for (const auto& [m, c] : w.terms()) CHECK(std::abs(c) <= std::abs(bound.coefficient(m)) * (1 + 1e-12));
        CHECK(bound.coefficient(0) == Complex(1.0));
    }
}
