#include "glink/bipoly.hpp"

#include <numeric>
#include <sstream>
#include <vector>

namespace glink {

BiPoly BiPoly::term(const Rational& coeff, std::int64_t qnum, std::int64_t tdeg,
                    std::int64_t qden) {
    if (qden <= 0) throw std::invalid_argument("BiPoly: q-denominator must be positive");
    std::int64_t g = std::gcd(qnum < 0 ? -qnum : qnum, qden);
    if (g > 1) {
        qnum /= g;
        qden /= g;
    }
    BiPoly p(qden);
    if (coeff != 0) {
        Rational c = coeff;
        c.canonicalize();
        p.terms_[{qnum, tdeg}] = c;
    }
    return p;
}

void BiPoly::rescale_to(std::int64_t d) {
    if (d == qdenom_) return;
    std::int64_t f = d / qdenom_;
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> scaled;
    for (auto& [k, c] : terms_) scaled.emplace(std::make_pair(k.first * f, k.second), c);
    terms_ = std::move(scaled);
    qdenom_ = d;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    std::int64_t d = std::lcm(qdenom_, o.qdenom_);
    rescale_to(d);
    std::int64_t f = d / o.qdenom_;
    for (const auto& [k, c] : o.terms_) {
        auto key = std::make_pair(k.first * f, k.second);
        Rational& slot = terms_[key];
        slot += c;
        slot.canonicalize();
        if (slot == 0) terms_.erase(key);
    }
    return *this;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
    BiPoly x = a, y = b;
    std::int64_t d = std::lcm(a.qdenom_, b.qdenom_);
    x.rescale_to(d);
    y.rescale_to(d);
    return x.terms_ == y.terms_;
}

LaurentPoly BiPoly::at_t_minus_one() const {
    LaurentPoly out(qdenom_);
    for (const auto& [k, c] : terms_) {
        Rational v = (k.second % 2 == 0) ? c : Rational(-c);
        v.canonicalize();
        out += LaurentPoly::monomial(v, k.first, qdenom_);
    }
    return out;
}

std::string BiPoly::str() const {
    if (terms_.empty()) return "0";
    // order: t ascending, q descending within equal t
    std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, Rational>> items(terms_.begin(),
                                                                                  terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return a.first.second < b.first.second;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, cin] : items) {
        Rational c = cin;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::vector<std::string> factors;
        auto [qs, ts] = k;
        std::int64_t qn = qs, qd = qdenom_;
        std::int64_t g = std::gcd(qn < 0 ? -qn : qn, qd);
        if (g > 1) {
            qn /= g;
            qd /= g;
        }
        if (qn != 0) {
            std::ostringstream f;
            if (qd == 1) {
                if (qn == 1)
                    f << "q";
                else
                    f << "q^" << qn;
            } else {
                f << "q^(" << qn << "/" << qd << ")";
            }
            factors.push_back(f.str());
        }
        if (ts != 0) {
            std::ostringstream f;
            if (ts == 1)
                f << "t";
            else
                f << "t^" << ts;
            factors.push_back(f.str());
        }
        if (factors.empty()) {
            os << rational_str(c);
        } else {
            std::string joined;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) joined += "*";
                joined += factors[i];
            }
            if (c != 1) os << rational_str(c) << "*";
            os << joined;
        }
    }
    return os.str();
}

}  // namespace glink
