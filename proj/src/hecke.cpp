#include "glink/hecke.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace glink {

Permutation::Permutation(std::vector<int> one_line) : word_(std::move(one_line)) {
    std::vector<bool> seen(word_.size(), false);
    for (int v : word_) {
        if (v < 1 || v > static_cast<int>(word_.size()) || seen[v - 1])
            throw std::invalid_argument("Permutation: not a bijection of 1..n");
        seen[v - 1] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    return Permutation(std::move(w));
}

Permutation Permutation::transposition(int n, int i) {
    if (i < 1 || i >= n) throw std::out_of_range("transposition index out of range");
    Permutation p = identity(n);
    std::swap(p.word_[i - 1], p.word_[i]);
    return p;
}

int Permutation::length() const {
    int inv = 0;
    for (std::size_t i = 0; i < word_.size(); ++i)
        for (std::size_t j = i + 1; j < word_.size(); ++j)
            if (word_[i] > word_[j]) ++inv;
    return inv;
}

Permutation Permutation::inverse() const {
    std::vector<int> w(word_.size());
    for (std::size_t i = 0; i < word_.size(); ++i) w[word_[i] - 1] = static_cast<int>(i) + 1;
    return Permutation(std::move(w));
}

Permutation operator*(const Permutation& u, const Permutation& v) {
    if (u.n() != v.n()) throw std::invalid_argument("Permutation product: size mismatch");
    std::vector<int> w(u.word_.size());
    for (int x = 1; x <= u.n(); ++x) w[x - 1] = u(v(x));
    return Permutation(std::move(w));
}

Permutation Permutation::right_mul_s(int i) const {
    if (i < 1 || i >= n()) throw std::out_of_range("generator index out of range");
    Permutation p = *this;
    std::swap(p.word_[i - 1], p.word_[i]);
    return p;
}

std::vector<int> Permutation::reduced_word() const {
    // Peel descents off the right: if w(i) > w(i+1) then l(w s_i) = l(w) - 1
    // and w = w' s_i.  Always removing the smallest descent is deterministic.
    std::vector<int> rev;
    Permutation w = *this;
    for (;;) {
        int descent = 0;
        for (int i = 1; i < w.n(); ++i) {
            if (w.word_[i - 1] > w.word_[i]) {
                descent = i;
                break;
            }
        }
        if (descent == 0) break;
        rev.push_back(descent);
        w = w.right_mul_s(descent);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

std::vector<Permutation> Permutation::all(int n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(w));
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

HeckeElement HeckeElement::unit(int n) { return basis(Permutation::identity(n)); }

HeckeElement HeckeElement::generator(int i, int n) {
    return basis(Permutation::transposition(n, i));
}

HeckeElement HeckeElement::basis(const Permutation& w) {
    HeckeElement x(w.n());
    x.terms_.emplace(w, LaurentPoly::one());
    return x;
}

HeckeElement HeckeElement::scalar(const LaurentPoly& c, int n) {
    HeckeElement x(n);
    if (!c.is_zero()) x.terms_.emplace(Permutation::identity(n), c);
    return x;
}

LaurentPoly HeckeElement::coeff(const Permutation& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? LaurentPoly::zero() : it->second;
}

void HeckeElement::add_term(const Permutation& w, const LaurentPoly& c) {
    if (w.n() != n_) throw std::invalid_argument("HeckeElement: strand count mismatch");
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
    if (n_ != o.n_) throw std::invalid_argument("HeckeElement: strand count mismatch");
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
    if (n_ != o.n_) throw std::invalid_argument("HeckeElement: strand count mismatch");
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

HeckeElement HeckeElement::operator*(const LaurentPoly& c) const {
    HeckeElement out(n_);
    if (c.is_zero()) return out;
    for (const auto& [w, v] : terms_) {
        LaurentPoly p = v * c;
        if (!p.is_zero()) out.terms_.emplace(w, p);
    }
    return out;
}

bool operator==(const HeckeElement& a, const HeckeElement& b) {
    if (a.n_ != b.n_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first) || ia->second != ib->second) return false;
    }
    return true;
}

namespace {

// x * T_i, expanded by T_w T_i = T_{w s_i} when l(w s_i) > l(w),
// else (q - q^{-1}) T_w + T_{w s_i}.
HeckeElement right_generator_action(const HeckeElement& x, int i) {
    static const LaurentPoly kTwist = LaurentPoly::q(1) - LaurentPoly::q(-1);
    HeckeElement out(x.n());
    for (const auto& [w, c] : x.terms()) {
        Permutation ws = w.right_mul_s(i);
        if (ws.length() > w.length()) {
            out.add_term(ws, c);
        } else {
            out.add_term(w, c * kTwist);
            out.add_term(ws, c);
        }
    }
    return out;
}

}  // namespace

HeckeElement hecke_mul(const HeckeElement& x, const HeckeElement& y) {
    if (x.n() != y.n()) throw std::invalid_argument("hecke_mul: strand count mismatch");
    HeckeElement out(x.n());
    for (const auto& [w, c] : y.terms()) {
        HeckeElement acc = x;
        for (int i : w.reduced_word()) acc = right_generator_action(acc, i);
        out += acc * c;
    }
    return out;
}

HeckeElement t_inverse(int i, int n) {
    HeckeElement out = HeckeElement::generator(i, n);
    out -= HeckeElement::scalar(LaurentPoly::q(1) - LaurentPoly::q(-1), n);
    return out;
}

HeckeElement kl_generator(int i, int n) {
    HeckeElement out = HeckeElement::generator(i, n);
    out += HeckeElement::scalar(LaurentPoly::q(-1), n);
    return out;
}

HeckeElement kl_longest(int n) {
    if (n < 1) throw std::domain_error("kl_longest: n must be positive");
    HeckeElement out(n);
    int lw0 = n * (n - 1) / 2;
    for (const Permutation& w : Permutation::all(n))
        out.add_term(w, LaurentPoly::q(w.length() - lw0));
    return out;
}

std::string HeckeElement::str() const {
    if (terms_.empty()) return "0";
    // order by (length, one-line lex)
    std::vector<const std::pair<const Permutation, LaurentPoly>*> items;
    for (const auto& t : terms_) items.push_back(&t);
    std::stable_sort(items.begin(), items.end(), [](const auto* a, const auto* b) {
        int la = a->first.length(), lb = b->first.length();
        if (la != lb) return la < lb;
        return a->first < b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : items) {
        const Permutation& w = t->first;
        LaurentPoly c = t->second;
        std::string cs = c.str();
        bool neg = false;
        if (c.is_monomial() && cs.size() && cs[0] == '-') {
            neg = true;
            c = -c;
            cs = c.str();
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::vector<int> rw = w.reduced_word();
        std::string gen;
        if (rw.empty()) {
            gen = "e";
        } else {
            for (std::size_t k = 0; k < rw.size(); ++k) {
                if (k) gen += "*";
                gen += "T" + std::to_string(rw[k]);
            }
        }
        if (cs == "1") {
            os << gen;
        } else if (c.is_monomial()) {
            os << cs << "*" << gen;
        } else {
            os << "(" << cs << ")*" << gen;
        }
    }
    return os.str();
}

namespace {

struct HeckeLexer {
    const std::string& s;
    std::size_t i = 0;
    explicit HeckeLexer(const std::string& text) : s(text) {}
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
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
        if (!accept(c)) throw std::invalid_argument(std::string("expected '") + c + "'");
    }
    std::int64_t integer() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw std::invalid_argument("expected integer");
        return std::stoll(s.substr(start, i - start));
    }
};

// Grammar:
//   expr   := ['-'] product (('+'|'-') product)*
//   product:= factor ('*' factor)*
//   factor := 'q' ['^' exp] | integer ['/' integer] | 'T' index | 'e' | '(' expr ')'
HeckeElement parse_expr(HeckeLexer& lx, int n);

HeckeElement parse_factor(HeckeLexer& lx, int n) {
    char c = lx.peek();
    if (c == '(') {
        lx.expect('(');
        HeckeElement inner = parse_expr(lx, n);
        lx.expect(')');
        return inner;
    }
    if (c == 'q') {
        lx.expect('q');
        std::int64_t num = 1, den = 1;
        if (lx.accept('^')) {
            if (lx.accept('(')) {
                num = lx.integer();
                if (lx.accept('/')) den = lx.integer();
                lx.expect(')');
            } else {
                num = lx.integer();
            }
        }
        return HeckeElement::scalar(LaurentPoly::monomial(1, num, den), n);
    }
    if (c == 'T') {
        lx.expect('T');
        std::int64_t idx = lx.integer();
        if (idx < 1 || idx >= n) throw std::invalid_argument("generator index out of range");
        return HeckeElement::generator(static_cast<int>(idx), n);
    }
    if (c == 'e') {
        lx.expect('e');
        return HeckeElement::unit(n);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::int64_t num = lx.integer();
        Rational r(static_cast<long>(num));
        if (lx.accept('/')) {
            std::int64_t den = lx.integer();
            if (den == 0) throw std::invalid_argument("zero denominator");
            r /= Rational(static_cast<long>(den));
        }
        r.canonicalize();
        return HeckeElement::scalar(LaurentPoly::constant(r), n);
    }
    throw std::invalid_argument("unexpected character in Hecke expression");
}

HeckeElement parse_product(HeckeLexer& lx, int n) {
    HeckeElement acc = parse_factor(lx, n);
    while (lx.accept('*')) acc = hecke_mul(acc, parse_factor(lx, n));
    return acc;
}

HeckeElement parse_expr(HeckeLexer& lx, int n) {
    bool neg = false;
    if (lx.accept('-'))
        neg = true;
    else
        lx.accept('+');
    HeckeElement acc = parse_product(lx, n);
    if (neg) acc = acc * LaurentPoly::constant(-1);
    for (;;) {
        char c = lx.peek();
        if (c == '+') {
            lx.expect('+');
            acc += parse_product(lx, n);
        } else if (c == '-') {
            lx.expect('-');
            acc -= parse_product(lx, n);
        } else {
            break;
        }
    }
    return acc;
}

}  // namespace

HeckeElement HeckeElement::parse(const std::string& text, int n) {
    HeckeLexer lx(text);
    HeckeElement out = parse_expr(lx, n);
    if (lx.peek() != '\0') throw std::invalid_argument("trailing input in Hecke expression");
    return out;
}

}  // namespace glink
