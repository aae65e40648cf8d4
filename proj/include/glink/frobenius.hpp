#pragma once

#include "glink/polyq.hpp"

#include <vector>

namespace glink {

/// Commutative Frobenius algebra k[X]/P(X) with trace tr(X^{N-1}) = 1,
/// tr(X^i) = 0 for i < N-1; comultiplication from the trace pairing.
/// For P = X^N the algebra is graded with deg X = 2 and basis in degrees
/// 1-N, 3-N, ..., N-1.
class FrobeniusAlgebra {
public:
    static FrobeniusAlgebra from_polynomial(const PolyQ& P);

    int dim() const { return N_; }
    const PolyQ& polynomial() const { return P_; }
    bool graded() const { return graded_; }

    /// Coefficients of X^i * X^j mod P.
    const std::vector<Rational>& mult(int i, int j) const { return mult_[i][j]; }
    /// Coefficient of X^s (x) X^t in Delta(X^i).
    const Rational& comult(int i, int s, int t) const { return comult_[i][s][t]; }
    Rational counit(int i) const { return counit_[i]; }
    /// q-degree of the basis vector X^e (graded case): 2e + 1 - N.
    int qdeg(int e) const { return 2 * e + 1 - N_; }

private:
    int N_ = 0;
    PolyQ P_;
    bool graded_ = false;
    std::vector<std::vector<std::vector<Rational>>> mult_;
    std::vector<std::vector<std::vector<Rational>>> comult_;
    std::vector<Rational> counit_;
};

/// Multiset of deformation roots {lambda_1^{N_1}, ..., lambda_l^{N_l}}.
struct DeformationSpec {
    std::vector<std::pair<Rational, int>> roots;  // (lambda_i, N_i), lambda_i distinct

    int total_degree() const;
    PolyQ polynomial() const;  // P_Sigma
    /// Parses "1,-1" or "0^2,1" (root[^multiplicity] comma list).
    static DeformationSpec parse(const std::string& text);
    std::string str() const;
};

/// CRT idempotents: e_i = 1 mod (X-lambda_i)^{N_i}, 0 mod the others.
std::vector<PolyQ> crt_idempotents(const DeformationSpec& s);

/// lhs = dim of wedge^k(V_N); rhs = branching sum over k_1+...+k_l = k.
std::pair<long, long> branching_dims(int N, const std::vector<int>& partition, int k);

}  // namespace glink
