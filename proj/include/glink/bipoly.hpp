#pragma once

#include "glink/laurent.hpp"

#include <map>
#include <utility>

namespace glink {

/// Two-variable polynomial in q (rational exponents, shared denominator) and
/// t (integer exponents); used for Poincare polynomials of bigraded tables.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::int64_t qdenom) : qdenom_(qdenom) {}

    static BiPoly term(const Rational& coeff, std::int64_t qnum, std::int64_t tdeg,
                       std::int64_t qden = 1);

    bool is_zero() const { return terms_.empty(); }
    std::int64_t qdenom() const { return qdenom_; }
    const std::map<std::pair<std::int64_t, std::int64_t>, Rational>& scaled_terms() const {
        return terms_;
    }

    BiPoly& operator+=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend bool operator==(const BiPoly& a, const BiPoly& b);
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    /// Substitute t = -1.
    LaurentPoly at_t_minus_one() const;

    /// Canonical rendering: t ascending, then q descending, e.g.
    /// "q^-1 + q + q^2*t^2".
    std::string str() const;

private:
    void rescale_to(std::int64_t d);
    // key = (q-exponent * qdenom_, t-exponent)
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> terms_;
    std::int64_t qdenom_ = 1;
};

}  // namespace glink
