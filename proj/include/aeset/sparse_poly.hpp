// Sparse univariate polynomials with arbitrary-precision integer
// coefficients and nonnegative arbitrary-precision exponents. The sparse
// form matters: the families built on top have support {c * p^a + ...} with
// exponents far beyond any dense representation for large p.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace aeset {

class SparsePoly {
public:
    using Terms = std::map<mpz_class, mpz_class>;  // exponent -> coefficient

    SparsePoly() = default;

    static SparsePoly monomial(mpz_class exponent, mpz_class coefficient) {
        if (exponent < 0) throw std::invalid_argument("SparsePoly: negative exponent");
        SparsePoly p;
        if (coefficient != 0) p.terms_.emplace(std::move(exponent), std::move(coefficient));
        return p;
    }

    static SparsePoly constant(mpz_class c) { return monomial(0, std::move(c)); }

    static SparsePoly from_terms(const std::vector<std::pair<mpz_class, mpz_class>>& terms) {
        SparsePoly p;
        for (const auto& [e, c] : terms) p.add_term(e, c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }

    mpz_class coeff(const mpz_class& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? mpz_class(0) : it->second;
    }

    const mpz_class& degree() const {
        if (terms_.empty()) throw std::invalid_argument("SparsePoly: zero polynomial has no degree");
        return terms_.rbegin()->first;
    }

    const mpz_class& min_exponent() const {
        if (terms_.empty())
            throw std::invalid_argument("SparsePoly: zero polynomial has no min exponent");
        return terms_.begin()->first;
    }

    void add_term(const mpz_class& e, const mpz_class& c) {
        if (e < 0) throw std::invalid_argument("SparsePoly: negative exponent");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    SparsePoly operator-() const {
        SparsePoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
        return out;
    }

    friend SparsePoly operator*(const mpz_class& s, const SparsePoly& p) {
        SparsePoly out;
        if (s == 0) return out;
        for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, s * c);
        return out;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.terms_ == b.terms_;
    }

    // Quotient by X^k; every exponent must be >= k.
    SparsePoly divided_by_power(const mpz_class& k) const {
        SparsePoly out;
        for (const auto& [e, c] : terms_) {
            if (e < k) throw std::invalid_argument("divided_by_power: exponent below divisor");
            out.terms_.emplace(e - k, c);
        }
        return out;
    }

private:
    Terms terms_;
};

namespace detail {

// base^e for mpz exponent; e must fit in unsigned long.
inline mpz_class pow_mpz(const mpz_class& base, const mpz_class& e) {
    if (e < 0) throw std::invalid_argument("pow_mpz: negative exponent");
    if (!e.fits_ulong_p()) throw std::domain_error("pow_mpz: exponent too large");
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e.get_ui());
    return out;
}

}  // namespace detail

// Exact sign of p(x) at a rational point. Writing x = num/den (canonical,
// den > 0) and m = min exponent, E = max exponent:
//   p(x) = x^m / den^(E-m) * sum_e c_e num^(e-m) den^(E-e),
// so the sign is that of the integer sum, flipped when num < 0 and m is odd.
inline int eval_sign(const SparsePoly& p, const mpq_class& x_in) {
    if (p.is_zero()) return 0;
    mpq_class x = x_in;
    x.canonicalize();
    const mpz_class num = x.get_num(), den = x.get_den();
    if (num == 0) return sgn(p.coeff(0));

    const mpz_class m = p.min_exponent();
    const mpz_class E = p.degree();
    mpz_class sum = 0;
    for (const auto& [e, c] : p.terms())
        sum += c * detail::pow_mpz(num, e - m) * detail::pow_mpz(den, E - e);
    int s = sgn(sum);
    if (num < 0 && mpz_odd_p(m.get_mpz_t())) s = -s;
    return s;
}

// Floating-point evaluation; exponents beyond double range saturate through
// std::pow. Diagnostics only, never a source of truth.
inline double eval_double(const SparsePoly& p, double x) {
    double out = 0.0;
    for (const auto& [e, c] : p.terms()) out += c.get_d() * std::pow(x, e.get_d());
    return out;
}

}  // namespace aeset
