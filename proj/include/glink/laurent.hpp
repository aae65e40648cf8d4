#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace glink {

using Rational = mpq_class;

std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& s);

/// Exact Laurent polynomial in one variable q with exponents in (1/D)Z for a
/// per-value denominator D >= 1.  Coefficients are arbitrary-precision
/// rationals; zero coefficients are never stored.  D stays 1 in the gl gauge
/// and becomes N in the sl gauge (fractional powers q^{1/N}).  Combining two
/// values with denominators D1, D2 yields denominator lcm(D1, D2).
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::int64_t denom) : denom_(check_denom(denom)) {}

    static LaurentPoly zero(std::int64_t denom = 1) { return LaurentPoly(denom); }
    static LaurentPoly constant(const Rational& c, std::int64_t denom = 1);
    static LaurentPoly one() { return constant(1); }
    /// coeff * q^(num/den)
    static LaurentPoly monomial(const Rational& coeff, std::int64_t num, std::int64_t den = 1);
    static LaurentPoly q(std::int64_t power = 1) { return monomial(1, power); }

    std::int64_t denom() const { return denom_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t term_count() const { return terms_.size(); }

    /// Terms keyed by exponent scaled by denom().
    const std::map<std::int64_t, Rational>& scaled_terms() const { return terms_; }

    /// Coefficient of q^(num/den); exact lookup.
    Rational coeff(std::int64_t num, std::int64_t den = 1) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly operator-() const;
    LaurentPoly operator*(const Rational& c) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// q -> q^{-1} substitution.
    LaurentPoly bar() const;
    /// Sum of coefficients.
    Rational eval_at_one() const;
    /// Integer power; negative exponents require a monomial.
    LaurentPoly pow(std::int64_t e) const;
    /// Multiplicative inverse; defined for monomials only.
    LaurentPoly inverse() const;

    /// Exact division; returns false when the division has a remainder.
    static bool try_divide(const LaurentPoly& num, const LaurentPoly& den, LaurentPoly& out);
    LaurentPoly divide_exact(const LaurentPoly& den) const;

    /// Copy with the exponent denominator reduced to the minimal one.
    LaurentPoly normalized() const;

    /// Canonical rendering, e.g. "q^3 + 2*q + 2*q^-1 + q^-3", "q^(1/2)".
    std::string str() const;
    static LaurentPoly parse(const std::string& text);

private:
    static std::int64_t check_denom(std::int64_t d);
    void rescale_to(std::int64_t new_denom);
    void prune();

    std::map<std::int64_t, Rational> terms_;  // key = exponent * denom_
    std::int64_t denom_ = 1;
};

/// [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}, n >= 1.
LaurentPoly qint(std::int64_t n);
/// [n]! = [n][n-1]...[2], with [1]! = 1.
LaurentPoly qfactorial(std::int64_t n);
/// Gaussian binomial, exact division; 0 <= k <= n.
LaurentPoly qbinom(std::int64_t n, std::int64_t k);

}  // namespace glink
