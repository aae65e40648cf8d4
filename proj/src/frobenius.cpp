#include "glink/frobenius.hpp"

#include "glink/linalg.hpp"

#include <sstream>

namespace glink {

FrobeniusAlgebra FrobeniusAlgebra::from_polynomial(const PolyQ& P) {
    if (P.degree() < 1) throw std::invalid_argument("frobenius: P must have degree >= 1");
    if (!P.is_monic()) throw std::invalid_argument("frobenius: P must be monic");
    FrobeniusAlgebra A;
    A.N_ = P.degree();
    A.P_ = P;
    A.graded_ = true;
    for (int i = 0; i < A.N_; ++i)
        if (P.coeff(i) != 0) A.graded_ = false;

    const int N = A.N_;
    // powers of X mod P up to X^{2N-2}
    std::vector<std::vector<Rational>> xpow(2 * N - 1, std::vector<Rational>(N, Rational(0)));
    PolyQ acc = PolyQ::constant(1);
    for (int k = 0; k <= 2 * N - 2; ++k) {
        PolyQ r = acc.mod(P);
        for (int i = 0; i < N; ++i) xpow[k][i] = r.coeff(i);
        acc = acc * PolyQ::X();
    }

    A.mult_.assign(N, std::vector<std::vector<Rational>>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) A.mult_[i][j] = xpow[i + j];

    // counit reads the X^{N-1} coefficient
    A.counit_.assign(N, Rational(0));
    A.counit_[N - 1] = 1;

    // trace pairing G_{ij} = tr(X^i X^j) and its inverse give the dual basis;
    // Delta(X^k) = sum_{i,j} tr(X^k X^i X^j-dual...) computed as
    // Delta(u) = sum_i (u X^i) (x) b^i with <X^i, b^j> = delta_ij.
    DenseQ G(N, std::vector<Rational>(N, Rational(0)));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) G[i][j] = xpow[i + j][N - 1];
    // invert G by Gauss-Jordan
    DenseQ inv(N, std::vector<Rational>(N, Rational(0)));
    for (int i = 0; i < N; ++i) inv[i][i] = 1;
    {
        DenseQ m = G;
        for (int c = 0; c < N; ++c) {
            int piv = -1;
            for (int r = c; r < N; ++r)
                if (m[r][c] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw std::logic_error("frobenius: degenerate trace pairing");
            std::swap(m[c], m[piv]);
            std::swap(inv[c], inv[piv]);
            Rational f = 1 / m[c][c];
            f.canonicalize();
            for (int j = 0; j < N; ++j) {
                m[c][j] *= f;
                inv[c][j] *= f;
                m[c][j].canonicalize();
                inv[c][j].canonicalize();
            }
            for (int r = 0; r < N; ++r) {
                if (r == c || m[r][c] == 0) continue;
                Rational g = m[r][c];
                for (int j = 0; j < N; ++j) {
                    m[r][j] -= g * m[c][j];
                    inv[r][j] -= g * inv[c][j];
                    m[r][j].canonicalize();
                    inv[r][j].canonicalize();
                }
            }
        }
    }
    // dual basis b^i = sum_j inv[i][j] X^j  (so that tr(X^i b^j) = delta_ij)
    A.comult_.assign(N, std::vector<std::vector<Rational>>(N, std::vector<Rational>(N, Rational(0))));
    for (int k = 0; k < N; ++k) {
        for (int i = 0; i < N; ++i) {
            // (X^k X^i) (x) b^i
            const std::vector<Rational>& prod = xpow[k + i];
            for (int s = 0; s < N; ++s) {
                if (prod[s] == 0) continue;
                for (int t = 0; t < N; ++t) {
                    if (inv[i][t] == 0) continue;
                    A.comult_[k][s][t] += prod[s] * inv[i][t];
                    A.comult_[k][s][t].canonicalize();
                }
            }
        }
    }
    return A;
}

int DeformationSpec::total_degree() const {
    int n = 0;
    for (const auto& [l, m] : roots) n += m;
    return n;
}

PolyQ DeformationSpec::polynomial() const {
    PolyQ p = PolyQ::constant(1);
    for (const auto& [lambda, mult] : roots) p = p * PolyQ::linear_root(lambda).pow(mult);
    return p;
}

DeformationSpec DeformationSpec::parse(const std::string& text) {
    DeformationSpec s;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        std::size_t b = piece.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = piece.find_last_not_of(" \t");
        piece = piece.substr(b, e - b + 1);
        int mult = 1;
        std::size_t caret = piece.find('^');
        if (caret != std::string::npos) {
            mult = std::stoi(piece.substr(caret + 1));
            piece = piece.substr(0, caret);
        }
        if (mult < 1) throw std::invalid_argument("sigma: multiplicity must be >= 1");
        s.roots.emplace_back(parse_rational(piece), mult);
    }
    if (s.roots.empty()) throw std::invalid_argument("sigma: empty root list");
    for (std::size_t i = 0; i < s.roots.size(); ++i)
        for (std::size_t j = i + 1; j < s.roots.size(); ++j)
            if (s.roots[i].first == s.roots[j].first)
                throw std::invalid_argument("sigma: repeated root");
    return s;
}

std::string DeformationSpec::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, m] : roots) {
        if (!first) os << ",";
        first = false;
        os << rational_str(l);
        if (m > 1) os << "^" << m;
    }
    return os.str();
}

std::vector<PolyQ> crt_idempotents(const DeformationSpec& s) {
    for (std::size_t i = 0; i < s.roots.size(); ++i)
        for (std::size_t j = i + 1; j < s.roots.size(); ++j)
            if (s.roots[i].first == s.roots[j].first)
                throw std::invalid_argument("crt_idempotents: repeated root");
    PolyQ P = s.polynomial();
    std::vector<PolyQ> out;
    for (const auto& [lambda, mult] : s.roots) {
        PolyQ f = PolyQ::linear_root(lambda).pow(mult);
        PolyQ Q;
        PolyQ::divmod(P, f, &Q, nullptr);
        // u Q + v f = 1; e = u Q mod P
        PolyQ u, v;
        PolyQ g = PolyQ::extended_gcd(Q, f, &u, &v);
        if (g.degree() != 0)
            throw std::logic_error("crt_idempotents: cofactors not coprime");
        Rational inv = 1 / g.coeff(0);
        inv.canonicalize();
        out.push_back((u * Q * inv).mod(P));
    }
    return out;
}

std::pair<long, long> branching_dims(int N, const std::vector<int>& partition, int k) {
    int sum = 0;
    for (int p : partition) {
        if (p < 1) throw std::invalid_argument("branching_dims: parts must be positive");
        sum += p;
    }
    if (sum != N) throw std::invalid_argument("branching_dims: partition must sum to N");
    if (k < 0 || k > N) throw std::invalid_argument("branching_dims: need 0 <= k <= N");

    LaurentPoly lhs_poly = qbinom(N, k);
    Rational lhs = lhs_poly.eval_at_one();

    auto binom = [](int n, int r) -> long {
        if (r < 0 || r > n) return 0;
        long v = 1;
        for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    // sum over k_1 + ... + k_l = k of prod binom(N_i, k_i)
    std::vector<long> acc(k + 1, 0);
    acc[0] = 1;
    for (int part : partition) {
        std::vector<long> next(k + 1, 0);
        for (int have = 0; have <= k; ++have) {
            if (acc[have] == 0) continue;
            for (int take = 0; take <= std::min(part, k - have); ++take)
                next[have + take] += acc[have] * binom(part, take);
        }
        acc = std::move(next);
    }
    return {static_cast<long>(lhs.get_num().get_si()), acc[k]};
}

}  // namespace glink
