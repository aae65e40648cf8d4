#include "glink/polyq.hpp"

#include <sstream>

namespace glink {

PolyQ::PolyQ(std::initializer_list<Rational> coeffs_low_to_high) : c_(coeffs_low_to_high) {
    for (auto& v : c_) v.canonicalize();
    trim();
}

void PolyQ::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::constant(const Rational& c) { return PolyQ{c}; }

PolyQ PolyQ::X() { return PolyQ{0, 1}; }

PolyQ PolyQ::linear_root(const Rational& lambda) { return PolyQ{-lambda, 1}; }

Rational PolyQ::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[i];
}

Rational PolyQ::leading() const {
    if (c_.empty()) return Rational(0);
    return c_.back();
}

Rational PolyQ::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + *it;
        acc.canonicalize();
    }
    return acc;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        c_[i] += o.c_[i];
        c_[i].canonicalize();
    }
    trim();
    return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        c_[i] -= o.c_[i];
        c_[i].canonicalize();
    }
    trim();
    return *this;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    PolyQ out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            out.c_[i + j] += a.c_[i] * b.c_[j];
            out.c_[i + j].canonicalize();
        }
    out.trim();
    return out;
}

PolyQ PolyQ::operator*(const Rational& c) const {
    PolyQ out = *this;
    for (auto& v : out.c_) {
        v *= c;
        v.canonicalize();
    }
    out.trim();
    return out;
}

void PolyQ::divmod(const PolyQ& num, const PolyQ& den, PolyQ* quot, PolyQ* rem) {
    if (den.is_zero()) throw std::domain_error("PolyQ: division by zero");
    PolyQ r = num, q;
    q.c_.assign(std::max<std::size_t>(num.c_.size(), 1), Rational(0));
    while (!r.is_zero() && r.degree() >= den.degree()) {
        int shift = r.degree() - den.degree();
        Rational f = r.leading() / den.leading();
        f.canonicalize();
        q.c_[shift] += f;
        PolyQ sub;
        sub.c_.assign(shift + den.c_.size(), Rational(0));
        for (std::size_t i = 0; i < den.c_.size(); ++i) {
            sub.c_[shift + i] = den.c_[i] * f;
            sub.c_[shift + i].canonicalize();
        }
        sub.trim();
        r -= sub;
    }
    q.trim();
    if (quot) *quot = q;
    if (rem) *rem = r;
}

PolyQ PolyQ::mod(const PolyQ& m) const {
    PolyQ r;
    divmod(*this, m, nullptr, &r);
    return r;
}

PolyQ PolyQ::pow(int e) const {
    if (e < 0) throw std::domain_error("PolyQ: negative power");
    PolyQ acc = constant(1), base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

PolyQ PolyQ::extended_gcd(const PolyQ& a, const PolyQ& b, PolyQ* u, PolyQ* v) {
    PolyQ r0 = a, r1 = b;
    PolyQ u0 = constant(1), u1 = PolyQ();
    PolyQ v0 = PolyQ(), v1 = constant(1);
    while (!r1.is_zero()) {
        PolyQ q, r;
        divmod(r0, r1, &q, &r);
        PolyQ u2 = u0 - q * u1;
        PolyQ v2 = v0 - q * v1;
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    if (!r0.is_zero()) {
        Rational inv = 1 / r0.leading();
        inv.canonicalize();
        r0 = r0 * inv;
        u0 = u0 * inv;
        v0 = v0 * inv;
    }
    if (u) *u = u0;
    if (v) *v = v0;
    return r0;
}

std::string PolyQ::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational v = c_[i];
        if (v == 0) continue;
        bool neg = v < 0;
        if (neg) v = -v;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (i == 0) {
            os << rational_str(v);
        } else {
            if (v != 1) os << rational_str(v) << "*";
            os << (i == 1 ? "X" : "X^" + std::to_string(i));
        }
    }
    return os.str();
}

PolyQ PolyQ::parse(const std::string& text) {
    PolyQ out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    bool any = false;
    while (true) {
        skip();
        if (i >= text.size()) break;
        int sign = 1;
        if (text[i] == '+') {
            ++i;
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
        } else if (any) {
            throw std::invalid_argument("PolyQ: expected +/- between terms");
        }
        skip();
        Rational coeff(1);
        bool have_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            std::string num = text.substr(start, i - start);
            std::string den = "1";
            skip();
            if (i < text.size() && text[i] == '/') {
                ++i;
                skip();
                start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                den = text.substr(start, i - start);
                if (den.empty()) throw std::invalid_argument("PolyQ: bad fraction");
            }
            coeff = parse_rational(num + "/" + den);
            have_coeff = true;
            skip();
            if (i < text.size() && text[i] == '*') ++i;
            skip();
        }
        int expo = 0;
        if (i < text.size() && (text[i] == 'X' || text[i] == 'x')) {
            ++i;
            expo = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip();
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw std::invalid_argument("PolyQ: bad exponent");
                expo = std::stoi(text.substr(start, i - start));
            }
        } else if (!have_coeff) {
            throw std::invalid_argument("PolyQ: expected term");
        }
        PolyQ term;
        term.c_.assign(expo + 1, Rational(0));
        term.c_[expo] = sign < 0 ? Rational(-coeff) : coeff;
        term.c_[expo].canonicalize();
        term.trim();
        out += term;
        any = true;
    }
    if (!any) throw std::invalid_argument("PolyQ: empty polynomial");
    return out;
}

}  // namespace glink
