#pragma once

#include "glink/laurent.hpp"

#include <string>
#include <vector>

namespace glink {

/// Dense univariate polynomial over the rationals (variable X).
class PolyQ {
public:
    PolyQ() = default;
    PolyQ(std::initializer_list<Rational> coeffs_low_to_high);
    static PolyQ constant(const Rational& c);
    static PolyQ X();
    /// X - lambda
    static PolyQ linear_root(const Rational& lambda);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Rational coeff(int i) const;
    Rational leading() const;
    Rational eval(const Rational& x) const;

    PolyQ& operator+=(const PolyQ& o);
    PolyQ& operator-=(const PolyQ& o);
    friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
    friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    PolyQ operator*(const Rational& c) const;
    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }
    friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

    static void divmod(const PolyQ& num, const PolyQ& den, PolyQ* quot, PolyQ* rem);
    PolyQ mod(const PolyQ& m) const;
    PolyQ pow(int e) const;

    /// g = gcd(a, b) monic, with u a + v b = g.
    static PolyQ extended_gcd(const PolyQ& a, const PolyQ& b, PolyQ* u, PolyQ* v);

    std::string str() const;  // e.g. "X^2 - 1"
    /// Parses e.g. "X^2-1", "X^2 - X", "(X-1)*(X+2)" is not supported; terms only.
    static PolyQ parse(const std::string& text);

private:
    void trim();
    std::vector<Rational> c_;  // c_[i] * X^i, no trailing zeros
};

}  // namespace glink
