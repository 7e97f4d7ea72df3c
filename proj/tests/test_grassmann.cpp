#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace exotic;
using namespace exotic::grassmann;
using Catch::Matchers::WithinAbs;

namespace {

// Oracle: a monomial as an index word; sorting it by adjacent swaps gives the
// sign, a repeated index gives zero.
std::pair<int, Mask> reorder(std::vector<int> word) {
    int sign = 1;
    for (std::size_t i = 0; i < word.size(); ++i)
        for (std::size_t j = 0; j + 1 < word.size() - i; ++j)
            if (word[j] > word[j + 1]) {
                std::swap(word[j], word[j + 1]);
                sign = -sign;
            }
    Mask m = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0 && word[i] == word[i - 1]) return {0, 0};
        m |= Mask{1} << word[i];
    }
    return {sign, m};
}

std::vector<int> word_of(Mask m) {
    std::vector<int> w;
    for (int i = 0; i < 32; ++i)
        if (m & (Mask{1} << i)) w.push_back(i);
    return w;
}

Element oracle_mul(const Element& a, const Element& b) {
    Element out(a.generators());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            auto w = word_of(ma);
            const auto wb = word_of(mb);
            w.insert(w.end(), wb.begin(), wb.end());
            const auto [s, m] = reorder(w);
            if (s) out.add_term(m, static_cast<double>(s) * ca * cb);
        }
    return out;
}

double distance(const Element& a, const Element& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("generators anticommute and square to zero", "[grassmann]") {
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto a = Element::generator(n, i), b = Element::generator(n, j);
                CHECK((a * b + b * a).empty());
                if (i == j) CHECK((a * a).empty());
            }
}

TEST_CASE("product matches the permutation-sign oracle", "[grassmann]") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = testing::random_element(n, rng), b = testing::random_element(n, rng);
            CHECK(distance(a * b, oracle_mul(a, b)) < 1e-12 * std::max(1.0, oracle_mul(a, b).max_abs()));
        }
}

TEST_CASE("product is associative", "[grassmann]") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = testing::random_element(5, rng), b = testing::random_element(5, rng),
                   c = testing::random_element(5, rng);
        const auto left = (a * b) * c;
        CHECK(distance(left, a * (b * c)) < 1e-12 * left.max_abs());
    }
}

TEST_CASE("left derivative of explicit monomials", "[grassmann]") {
    const int n = 4;
    // d/dth1 (th0 th1 th3) = -th0 th3
    const auto m = Element::monomial(n, 0b1011);
    const auto d = derive(1, m);
    CHECK(d.coefficient(0b1001) == Complex(-1.0));
    CHECK(derive(0, m).coefficient(0b1010) == Complex(1.0));
    CHECK(derive(3, m).coefficient(0b0011) == Complex(1.0));
    CHECK(derive(2, m).empty());
}

TEST_CASE("graded Leibniz rule", "[grassmann]") {
    std::mt19937_64 rng(13);
    const int n = 5;
    for (int trial = 0; trial < 20; ++trial) {
        // homogeneous parts of random elements
        auto full_a = testing::random_element(n, rng);
        auto b = testing::random_element(n, rng);
        for (int parity = 0; parity < 2; ++parity) {
            Element a(n);
            for (const auto& [m, c] : full_a.terms())
                if (std::popcount(m) % 2 == parity) a.add_term(m, c);
            for (int i = 0; i < n; ++i) {
                const auto lhs = derive(i, a * b);
                auto rhs = derive(i, a) * b;
                rhs += (parity ? -1.0 : 1.0) * (a * derive(i, b));
                CHECK(distance(lhs, rhs) < 1e-12 * std::max(1.0, lhs.max_abs()));
            }
        }
    }
}

TEST_CASE("anticommutator of linear operators is the scalar product", "[grassmann]") {
    std::mt19937_64 rng(14);
    std::normal_distribution<double> g;
    const int n = 5;
    for (int trial = 0; trial < 20; ++trial) {
        LinearOperatorSpec d1(n), d2(n);
        for (int t = 0; t < n; ++t) {
            d1.beta[t] = {g(rng), g(rng)};
            d1.gamma[t] = {g(rng), g(rng)};
            d2.beta[t] = {g(rng), g(rng)};
            d2.gamma[t] = {g(rng), g(rng)};
        }
        const auto a = testing::random_element(n, rng);
        const auto lhs = apply(d1, apply(d2, a)) + apply(d2, apply(d1, a));
        const auto sp = anticommutator_scalar(d1, d2);
        CHECK(distance(lhs, sp.total * a) < 1e-11 * lhs.max_abs());
        Complex sum;
        for (auto p : sp.partial) sum += p;
        CHECK(std::abs(sum - sp.total) < 1e-12 * std::abs(sp.total) + 1e-300);
    }
}

TEST_CASE("degree-four coefficient of the Gaussian is the Pfaffian", "[grassmann]") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix f = testing::random_antisymmetric(4, rng);
        const auto w = exp_quadratic(f);
        const Complex pf = f(0, 1) * f(2, 3) - f(0, 2) * f(1, 3) + f(0, 3) * f(1, 2);
        CHECK(std::abs(w.coefficient(0b1111) - pf) < 1e-12 * std::max(1.0, std::abs(pf)));
        CHECK(w.coefficient(0) == Complex(1.0));
        CHECK(w.coefficient(0b0011) == -f(0, 1));
        CHECK(w.is_even());
    }
}

TEST_CASE("rows of p + F theta annihilate the Gaussian", "[grassmann]") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix f = testing::random_antisymmetric(5, rng);
        const auto w = exp_quadratic(f);
        for (int p = 0; p < 5; ++p) {
            LinearOperatorSpec d(5);
            d.beta[p] = 1.0;
            for (int q = 0; q < 5; ++q) d.gamma[q] = f(p, q);
            CHECK(apply(d, w).max_abs() < 1e-12 * weight_magnitude_bound(f.cwiseAbs()).max_abs());
        }
    }
}

TEST_CASE("zero F gives unit weight annihilated only by pure derivatives", "[grassmann]") {
    const auto w = exp_quadratic(Matrix::Zero(5, 5));
    CHECK(w.terms().size() == 1);
    CHECK(w.coefficient(0) == Complex(1.0));
    CHECK(apply(LinearOperatorSpec::derivative(5, 2), w).empty());
    CHECK_FALSE(apply(LinearOperatorSpec::multiplication(5, 2), w).empty());
}

TEST_CASE("non-antisymmetric F is rejected", "[grassmann]") {
    Matrix f = Matrix::Zero(3, 3);
    f(0, 1) = 1.0;
    CHECK_THROWS_AS(exp_quadratic(f), ContractViolation);
}

TEST_CASE("matching bound counts perfect matchings", "[grassmann]") {
    const auto b = weight_magnitude_bound(Eigen::MatrixXd::Ones(4, 4));
    CHECK_THAT(b.coefficient(0b1111).real(), WithinAbs(3.0, 0.0));
    CHECK_THAT(b.coefficient(0b0101).real(), WithinAbs(1.0, 0.0));
    CHECK(b.coefficient(0b0111) == Complex{});
}

TEST_CASE("only exact zeros are dropped", "[grassmann]") {
    Element a(3);
    a.add_term(0b001, 1e-30);
    CHECK(a.terms().size() == 1);
    a.add_term(0b001, -1e-30);
    CHECK(a.empty());
    a.add_term(0b010, 1e-20);
    a.add_term(0b100, 1.0);
    CHECK(a.chop(1e-12).terms().size() == 1);
    CHECK(a.is_zero(1e13));  // tolerance is relative: 1e-12 * 1e13 > 1
    CHECK_FALSE(a.is_zero(1.0));
}

TEST_CASE("generator count is bounded", "[grassmann]") {
    CHECK_THROWS_AS(Element(33), ContractViolation);
    CHECK_THROWS_AS(Element::generator(3, 3), ContractViolation);
    CHECK_THROWS_AS(Element(3) + Element(4), ContractViolation);
}
