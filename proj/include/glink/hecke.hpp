#pragma once

#include "glink/laurent.hpp"

#include <map>
#include <vector>

namespace glink {

/// Permutation of {1..n} in one-line notation; length = inversion count.
class Permutation {
public:
    explicit Permutation(std::vector<int> one_line);
    static Permutation identity(int n);
    static Permutation transposition(int n, int i);  // s_i swaps i, i+1

    int n() const { return static_cast<int>(word_.size()); }
    int operator()(int x) const { return word_[x - 1]; }  // 1-based
    const std::vector<int>& one_line() const { return word_; }

    int length() const;  // inversion count
    Permutation inverse() const;
    /// (u * v)(x) = u(v(x))
    friend Permutation operator*(const Permutation& u, const Permutation& v);
    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.word_ == b.word_;
    }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.word_ < b.word_;
    }

    /// Right product w * s_i (swaps entries at positions i, i+1).
    Permutation right_mul_s(int i) const;
    /// Reduced word s_{i1}...s_{ik} for w, derived greedily by descent removal.
    std::vector<int> reduced_word() const;

    static std::vector<Permutation> all(int n);

private:
    std::vector<int> word_;
};

/// Element of the type-A Hecke algebra H_n over Laurent polynomials in q,
/// expanded in the standard basis {T_w}.  Quadratic relation:
/// T_i^2 = (q - q^{-1}) T_i + 1.
class HeckeElement {
public:
    HeckeElement() : n_(1) {}
    explicit HeckeElement(int n) : n_(n) {}

    static HeckeElement unit(int n);                       // T_e
    static HeckeElement generator(int i, int n);           // T_i
    static HeckeElement basis(const Permutation& w);       // T_w
    static HeckeElement scalar(const LaurentPoly& c, int n);

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Permutation, LaurentPoly>& terms() const { return terms_; }
    LaurentPoly coeff(const Permutation& w) const;

    HeckeElement& operator+=(const HeckeElement& o);
    HeckeElement& operator-=(const HeckeElement& o);
    friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
    friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
    HeckeElement operator*(const LaurentPoly& c) const;
    friend bool operator==(const HeckeElement& a, const HeckeElement& b);
    friend bool operator!=(const HeckeElement& a, const HeckeElement& b) { return !(a == b); }

    void add_term(const Permutation& w, const LaurentPoly& c);

    std::string str() const;
    /// Parses expressions like "T1*T2 + q^-1*T1" ("e" is the identity).
    static HeckeElement parse(const std::string& text, int n);

private:
    int n_;
    std::map<Permutation, LaurentPoly> terms_;
};

/// Product in H_n via single-generator actions along a reduced word of y.
HeckeElement hecke_mul(const HeckeElement& x, const HeckeElement& y);

/// T_i^{-1} = T_i - (q - q^{-1}) T_e.
HeckeElement t_inverse(int i, int n);

/// Kazhdan-Lusztig generator B_i = T_i + q^{-1} T_e.
HeckeElement kl_generator(int i, int n);

/// B_{w_0} = q^{-l(w0)} sum_w q^{l(w)} T_w, the q-Young symmetrizer.
HeckeElement kl_longest(int n);

}  // namespace glink
