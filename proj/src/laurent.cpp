#include "glink/laurent.hpp"

#include <numeric>
#include <sstream>

namespace glink {

std::string rational_str(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

std::int64_t LaurentPoly::check_denom(std::int64_t d) {
    if (d <= 0) throw std::invalid_argument("exponent denominator must be positive");
    return d;
}

LaurentPoly LaurentPoly::constant(const Rational& c, std::int64_t denom) {
    LaurentPoly p(denom);
    if (c != 0) {
        Rational cc = c;
        cc.canonicalize();
        p.terms_[0] = cc;
    }
    return p;
}

LaurentPoly LaurentPoly::monomial(const Rational& coeff, std::int64_t num, std::int64_t den) {
    check_denom(den);
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    LaurentPoly p(den);
    if (coeff != 0) {
        Rational c = coeff;
        c.canonicalize();
        p.terms_[num] = c;
    }
    return p;
}

Rational LaurentPoly::coeff(std::int64_t num, std::int64_t den) const {
    check_denom(den);
    // exponent num/den as key: num/den * denom_ must be integral
    if ((num * denom_) % den != 0) return Rational(0);
    auto it = terms_.find(num * denom_ / den);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

void LaurentPoly::rescale_to(std::int64_t new_denom) {
    if (new_denom == denom_) return;
    if (new_denom % denom_ != 0) throw std::logic_error("rescale_to: not a multiple");
    std::int64_t f = new_denom / denom_;
    std::map<std::int64_t, Rational> scaled;
    for (auto& [e, c] : terms_) scaled.emplace(e * f, c);
    terms_ = std::move(scaled);
    denom_ = new_denom;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    std::int64_t d = std::lcm(denom_, o.denom_);
    rescale_to(d);
    std::int64_t f = d / o.denom_;
    for (const auto& [e, c] : o.terms_) {
        Rational& slot = terms_[e * f];
        slot += c;
        slot.canonicalize();
        if (slot == 0) terms_.erase(e * f);
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    std::int64_t d = std::lcm(denom_, o.denom_);
    rescale_to(d);
    std::int64_t f = d / o.denom_;
    for (const auto& [e, c] : o.terms_) {
        Rational& slot = terms_[e * f];
        slot -= c;
        slot.canonicalize();
        if (slot == 0) terms_.erase(e * f);
    }
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    std::int64_t d = std::lcm(a.denom_, b.denom_);
    LaurentPoly out(d);
    if (a.is_zero() || b.is_zero()) return out;
    std::int64_t fa = d / a.denom_, fb = d / b.denom_;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Rational& slot = out.terms_[ea * fa + eb * fb];
            slot += ca * cb;
            slot.canonicalize();
        }
    }
    out.prune();
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

LaurentPoly LaurentPoly::operator*(const Rational& c) const {
    LaurentPoly out(denom_);
    if (c == 0) return out;
    for (const auto& [e, v] : terms_) {
        Rational r = v * c;
        r.canonicalize();
        out.terms_[e] = r;
    }
    return out;
}

LaurentPoly LaurentPoly::normalized() const {
    if (terms_.empty()) return LaurentPoly(1);
    std::int64_t g = denom_;
    for (const auto& [e, c] : terms_) {
        g = std::gcd(g, e < 0 ? -e : e);
        if (g == 1) break;
    }
    if (g == 1 || g == 0) {
        if (g == 0) g = denom_;  // all exponents zero
        if (g == 1) return *this;
    }
    LaurentPoly out(denom_ / g);
    for (const auto& [e, c] : terms_) out.terms_[e / g] = c;
    return out;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly na = a.normalized(), nb = b.normalized();
    return na.denom_ == nb.denom_ && na.terms_ == nb.terms_;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly out(denom_);
    for (const auto& [e, c] : terms_) out.terms_[-e] = c;
    return out;
}

Rational LaurentPoly::eval_at_one() const {
    Rational s(0);
    for (const auto& [e, c] : terms_) s += c;
    s.canonicalize();
    return s;
}

LaurentPoly LaurentPoly::inverse() const {
    if (terms_.size() != 1) throw std::domain_error("inverse: only monomials are units");
    const auto& [e, c] = *terms_.begin();
    LaurentPoly out(denom_);
    Rational ic = 1 / c;
    ic.canonicalize();
    out.terms_[-e] = ic;
    return out;
}

LaurentPoly LaurentPoly::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    LaurentPoly acc = one();
    LaurentPoly base = *this;
    std::int64_t n = e;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    // preserve the denominator context even for p^0
    std::int64_t d = std::lcm(acc.denom_, denom_);
    acc.rescale_to(d);
    return acc;
}

bool LaurentPoly::try_divide(const LaurentPoly& num, const LaurentPoly& den, LaurentPoly& out) {
    if (den.is_zero()) return false;
    std::int64_t d = std::lcm(num.denom_, den.denom_);
    LaurentPoly r = num;
    r.rescale_to(d);
    LaurentPoly b = den;
    b.rescale_to(d);
    out = LaurentPoly(d);
    if (r.is_zero()) return true;

    const std::int64_t lead_b = b.terms_.rbegin()->first;
    const Rational& lead_bc = b.terms_.rbegin()->second;
    const std::int64_t min_b = b.terms_.begin()->first;
    const std::int64_t min_r0 = r.terms_.begin()->first;
    // If the division is exact, every quotient exponent is >= min(num) - min(den).
    const std::int64_t qfloor = min_r0 - min_b;

    while (!r.is_zero()) {
        std::int64_t er = r.terms_.rbegin()->first;
        std::int64_t eq = er - lead_b;
        if (eq < qfloor) return false;
        Rational cq = r.terms_.rbegin()->second / lead_bc;
        cq.canonicalize();
        LaurentPoly m(d);
        m.terms_[eq] = cq;
        out += m;
        r -= m * b;
    }
    return true;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& den) const {
    LaurentPoly out;
    if (!try_divide(*this, den, out)) throw std::domain_error("divide_exact: inexact division");
    return out;
}

namespace {

void append_exponent(std::ostringstream& os, std::int64_t num, std::int64_t den) {
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (den == 1) {
        if (num == 1)
            os << "q";
        else
            os << "q^" << num;
    } else {
        os << "q^(" << num << "/" << den << ")";
    }
}

}  // namespace

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending exponents
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (it->first == 0) {
            os << rational_str(c);
        } else {
            if (c != 1) os << rational_str(c) << "*";
            append_exponent(os, it->first, denom_);
        }
    }
    return os.str();
}

namespace {

struct PolyLexer {
    const std::string& s;
    std::size_t i = 0;
    explicit PolyLexer(const std::string& text) : s(text) {}
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw std::invalid_argument(std::string("expected '") + c + "' in polynomial");
    }
    std::int64_t integer() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw std::invalid_argument("expected integer in polynomial");
        return std::stoll(s.substr(start, i - start));
    }
};

// exponent := integer | '(' integer [ '/' integer ] ')'
void parse_exponent(PolyLexer& lx, std::int64_t& num, std::int64_t& den) {
    den = 1;
    if (lx.accept('(')) {
        num = lx.integer();
        if (lx.accept('/')) den = lx.integer();
        lx.expect(')');
    } else {
        num = lx.integer();
    }
    if (den <= 0) throw std::invalid_argument("exponent denominator must be positive");
}

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
    PolyLexer lx(text);
    LaurentPoly out = LaurentPoly::zero();
    bool any = false;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            sign = -1;
        } else if (any) {
            throw std::invalid_argument("expected '+' or '-' between terms");
        }
        // term := [rational ['*']] [ 'q' ['^' exponent] ]
        Rational coeff(1);
        bool have_coeff = false;
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t n = lx.integer();
            coeff = Rational(static_cast<long>(n));
            if (lx.accept('/')) {
                std::int64_t d = lx.integer();
                if (d == 0) throw std::invalid_argument("zero denominator in coefficient");
                coeff /= Rational(static_cast<long>(d));
            }
            coeff.canonicalize();
            have_coeff = true;
            lx.accept('*');
        }
        std::int64_t enum_ = 0, eden = 1;
        if (lx.peek() == 'q') {
            lx.expect('q');
            if (lx.accept('^'))
                parse_exponent(lx, enum_, eden);
            else
                enum_ = 1;
        } else if (!have_coeff) {
            throw std::invalid_argument("expected term in polynomial");
        }
        if (sign < 0) coeff = -coeff;
        out += LaurentPoly::monomial(coeff, enum_, eden);
        any = true;
    }
    if (!any) throw std::invalid_argument("empty polynomial text");
    return out;
}

LaurentPoly qint(std::int64_t n) {
    if (n <= 0) throw std::domain_error("qint: n must be positive");
    LaurentPoly p;
    for (std::int64_t e = n - 1; e >= 1 - n; e -= 2) p += LaurentPoly::q(e);
    return p;
}

LaurentPoly qfactorial(std::int64_t n) {
    if (n <= 0) throw std::domain_error("qfactorial: n must be positive");
    LaurentPoly p = LaurentPoly::one();
    for (std::int64_t k = 2; k <= n; ++k) p *= qint(k);
    return p;
}

LaurentPoly qbinom(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) throw std::domain_error("qbinom: need 0 <= k <= n");
    // Partial products [n-k+1]...[n-k+i] / [1]...[i] stay polynomial at each step.
    LaurentPoly p = LaurentPoly::one();
    for (std::int64_t i = 1; i <= k; ++i) {
        p *= qint(n - k + i);
        p = p.divide_exact(qint(i));
    }
    return p;
}

}  // namespace glink
