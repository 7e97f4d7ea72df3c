#pragma once

// Exact symbolic Grassmann algebra with left Berezin derivatives. Elements are
// sparse maps from generator subsets (bitmasks, bit i = generator i) to
// complex coefficients. Only exact zeros are dropped; deciding whether a tiny
// residue is a "symbolic zero" is left to the caller, who knows the scale.

#include "exotic/core.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <map>

namespace exotic::grassmann {

using Mask = std::uint32_t;

inline constexpr int max_generators = 32;

namespace detail {

inline Mask below(int i) { return static_cast<Mask>((std::uint64_t{1} << i) - 1u); }

/// Sign of reordering monomial a followed by monomial b into increasing order.
inline int product_sign(Mask a, Mask b) {
    int swaps = 0;
    while (b) {
        const int j = std::countr_zero(b);
        b &= b - 1;
        swaps += std::popcount(a & ~below(j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

inline void check_count(int n) {
    if (n < 0 || n > max_generators)
        throw ContractViolation("grassmann: generator count out of range: " + std::to_string(n));
}

}  // namespace detail

class Element {
public:
    using Terms = std::map<Mask, Complex>;

    explicit Element(int generators = 0) : n_(generators) { detail::check_count(generators); }

    static Element scalar(int generators, Complex c) {
        Element e(generators);
        e.add_term(0, c);
        return e;
    }

    static Element generator(int generators, int i) {
        if (i < 0 || i >= generators) throw ContractViolation("grassmann: generator index out of range");
        Element e(generators);
        e.add_term(Mask{1} << i, 1.0);
        return e;
    }

    static Element monomial(int generators, Mask m, Complex c = 1.0) {
        if (generators < max_generators && (m >> generators) != 0)
            throw ContractViolation("grassmann: monomial uses a generator beyond the count");
        Element e(generators);
        e.add_term(m, c);
        return e;
    }

    int generators() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Complex coefficient(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Complex{} : it->second;
    }

    void add_term(Mask m, Complex c) {
        if (c == Complex{}) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex{}) terms_.erase(it);
        }
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
        return m;
    }

    /// True when every coefficient is below `tol * scale`.
    bool is_zero(double scale, double tol = 1e-12) const { return max_abs() <= tol * scale; }

    /// Copy with terms of magnitude below `threshold` removed.
    Element chop(double threshold) const {
        Element out(n_);
        for (const auto& [m, c] : terms_)
            if (std::abs(c) >= threshold) out.terms_.emplace(m, c);
        return out;
    }

    /// Same support, coefficients replaced by their magnitudes.
    Element magnitudes() const {
        Element out(n_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, std::abs(c));
        return out;
    }

    bool is_even() const {
        for (const auto& [m, c] : terms_)
            if (std::popcount(m) & 1) return false;
        return true;
    }

    bool is_odd() const {
        for (const auto& [m, c] : terms_)
            if (!(std::popcount(m) & 1)) return false;
        return true;
    }

    Element& operator+=(const Element& o) {
        same_count(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Element& operator-=(const Element& o) {
        same_count(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    Element& operator*=(Complex s) {
        if (s == Complex{}) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Complex s, Element a) { return a *= s; }

    void same_count(const Element& o) const {
        if (o.n_ != n_) throw ContractViolation("grassmann: mismatched generator counts");
    }

private:
    int n_;
    Terms terms_;
};

/// Associative Grassmann product.
inline Element mul(const Element& a, const Element& b) {
    a.same_count(b);
    Element out(a.generators());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            out.add_term(ma | mb, static_cast<double>(detail::product_sign(ma, mb)) * ca * cb);
        }
    return out;
}

inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }

/// Left derivative with respect to generator i.
inline Element derive(int i, const Element& a) {
    if (i < 0 || i >= a.generators()) throw ContractViolation("grassmann: derivative index out of range");
    const Mask bit = Mask{1} << i;
    Element out(a.generators());
    for (const auto& [m, c] : a.terms()) {
        if (!(m & bit)) continue;
        const double sign = (std::popcount(m & detail::below(i)) & 1) ? -1.0 : 1.0;
        out.add_term(m & ~bit, sign * c);
    }
    return out;
}

/// Left multiplication by generator i.
inline Element multiply_generator(int i, const Element& a) {
    if (i < 0 || i >= a.generators()) throw ContractViolation("grassmann: generator index out of range");
    const Mask bit = Mask{1} << i;
    Element out(a.generators());
    for (const auto& [m, c] : a.terms()) {
        if (m & bit) continue;
        const double sign = (std::popcount(m & detail::below(i)) & 1) ? -1.0 : 1.0;
        out.add_term(m | bit, sign * c);
    }
    return out;
}

/// The operator sum_t (beta_t d/dtheta_t + gamma_t theta_t).
struct LinearOperatorSpec {
    std::vector<Complex> beta;
    std::vector<Complex> gamma;

    LinearOperatorSpec() = default;
    explicit LinearOperatorSpec(int n) : beta(n), gamma(n) {}
    LinearOperatorSpec(std::vector<Complex> b, std::vector<Complex> g) : beta(std::move(b)), gamma(std::move(g)) {
        if (beta.size() != gamma.size()) throw ContractViolation("grassmann: beta/gamma length mismatch");
    }

    int generators() const { return static_cast<int>(beta.size()); }

    static LinearOperatorSpec derivative(int n, int i) {
        LinearOperatorSpec d(n);
        d.beta.at(i) = 1.0;
        return d;
    }

    static LinearOperatorSpec multiplication(int n, int i) {
        LinearOperatorSpec d(n);
        d.gamma.at(i) = 1.0;
        return d;
    }

    /// Coefficients replaced by magnitudes; used to bound cancellation error.
    LinearOperatorSpec magnitudes() const {
        LinearOperatorSpec out(generators());
        for (int t = 0; t < generators(); ++t) {
            out.beta[t] = std::abs(beta[t]);
            out.gamma[t] = std::abs(gamma[t]);
        }
        return out;
    }
};

inline Element apply(const LinearOperatorSpec& op, const Element& a) {
    if (op.generators() != a.generators()) throw ContractViolation("grassmann: operator/element generator mismatch");
    Element out(a.generators());
    for (int t = 0; t < op.generators(); ++t) {
        if (op.beta[t] != Complex{}) out += op.beta[t] * derive(t, a);
        if (op.gamma[t] != Complex{}) out += op.gamma[t] * multiply_generator(t, a);
    }
    return out;
}

/// Coefficientwise bound on |apply(op, a)|: the same sum with every
/// coefficient and reordering sign replaced by a magnitude, so nothing cancels.
inline Element apply_bound(const LinearOperatorSpec& op, const Element& a) {
    if (op.generators() != a.generators()) throw ContractViolation("grassmann: operator/element generator mismatch");
    Element out(a.generators());
    for (int t = 0; t < op.generators(); ++t) {
        const Mask bit = Mask{1} << t;
        const double b = std::abs(op.beta[t]), g = std::abs(op.gamma[t]);
        for (const auto& [m, c] : a.terms()) {
            if ((m & bit) && b > 0.0) out.add_term(m & ~bit, b * std::abs(c));
            if (!(m & bit) && g > 0.0) out.add_term(m | bit, g * std::abs(c));
        }
    }
    return out;
}

/// The quadratic form -1/2 theta^T F theta = -sum_{i<j} F_ij theta_i theta_j.
inline Element quadratic_form(const Matrix& f, double antisymmetry_tol = 1e-12) {
    if (f.rows() != f.cols()) throw ContractViolation("grassmann: F must be square");
    const int n = static_cast<int>(f.rows());
    detail::check_count(n);
    const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
    if ((f + f.transpose()).cwiseAbs().maxCoeff() > antisymmetry_tol * scale)
        throw ContractViolation("grassmann: F is not antisymmetric");
    Element q(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) q.add_term((Mask{1} << i) | (Mask{1} << j), -f(i, j));
    return q;
}

/// exp(-1/2 theta^T F theta) by its terminating Taylor series.
inline Element exp_quadratic(const Matrix& f, double antisymmetry_tol = 1e-12) {
    const Element q = quadratic_form(f, antisymmetry_tol);
    const int n = q.generators();
    Element result = Element::scalar(n, 1.0);
    Element power = Element::scalar(n, 1.0);
    for (int k = 1; 2 * k <= n; ++k) {
        power = mul(power, q);
        power *= 1.0 / k;
        if (power.empty()) break;
        result += power;
    }
    return result;
}

/// Scalar product <d1|d2> = sum_t (beta1 gamma2 + beta2 gamma1), with the
/// per-generator partial products.
struct ScalarProduct {
    Complex total;
    std::vector<Complex> partial;
};

inline ScalarProduct anticommutator_scalar(const LinearOperatorSpec& d1, const LinearOperatorSpec& d2) {
    if (d1.generators() != d2.generators()) throw ContractViolation("grassmann: operator generator mismatch");
    ScalarProduct sp{Complex{}, std::vector<Complex>(d1.generators())};
    for (int t = 0; t < d1.generators(); ++t) {
        sp.partial[t] = d1.beta[t] * d2.gamma[t] + d2.beta[t] * d1.gamma[t];
        sp.total += sp.partial[t];
    }
    return sp;
}

namespace detail {

inline std::string format_complex(Complex c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", c.real(), c.imag());
    return buf;
}

}  // namespace detail

/// Debug form, e.g. "(1+0i) + (-2+0i)th[0]th[1]".
inline std::string to_string(const Element& a) {
    if (a.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : a.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + detail::format_complex(c) + ")";
        for (int i = 0; i < a.generators(); ++i)
            if (m & (Mask{1} << i)) out += "th[" + std::to_string(i) + "]";
    }
    return out;
}

}  // namespace exotic::grassmann
