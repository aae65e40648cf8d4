#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glink/hecke.hpp"

#include <random>

using namespace glink;

namespace {

HeckeElement T(int i, int n) { return HeckeElement::generator(i, n); }

HeckeElement random_element(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> nterms(1, 3), expo(-2, 2), coef(-3, 3);
    auto perms = Permutation::all(n);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    HeckeElement x(n);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t)
        x.add_term(perms[pick(rng)], LaurentPoly::monomial(coef(rng), expo(rng)));
    return x;
}

}  // namespace

TEST_CASE("permutations") {
    Permutation e = Permutation::identity(3);
    CHECK(e.length() == 0);
    Permutation s1 = Permutation::transposition(3, 1);
    Permutation s2 = Permutation::transposition(3, 2);
    CHECK(s1.length() == 1);
    CHECK((s1 * s2).length() == 2);
    CHECK((s1 * s2 * s1).length() == 3);
    CHECK(s1 * s1 == e);
    CHECK((s1 * s2 * s1) == (s2 * s1 * s2));  // longest element of S_3
    Permutation w0 = s1 * s2 * s1;
    CHECK(w0.reduced_word().size() == 3);
    CHECK(w0.inverse() == w0);
    // reduced word reassembles the permutation
    Permutation acc = Permutation::identity(3);
    for (int i : w0.reduced_word()) acc = acc * Permutation::transposition(3, i);
    CHECK(acc == w0);
    CHECK(Permutation::all(4).size() == 24);
    CHECK_THROWS(Permutation({1, 1, 2}));
}

TEST_CASE("quadratic relation and unit") {
    // T_1^2 = (q - q^{-1}) T_1 + 1
    LaurentPoly twist = LaurentPoly::q(1) - LaurentPoly::q(-1);
    for (int n = 2; n <= 5; ++n) {
        for (int i = 1; i < n; ++i) {
            HeckeElement lhs = hecke_mul(T(i, n), T(i, n));
            HeckeElement rhs = T(i, n) * twist + HeckeElement::unit(n);
            CHECK(lhs == rhs);
            // (T_i - q)(T_i + q^{-1}) = 0
            HeckeElement f1 = T(i, n) - HeckeElement::scalar(LaurentPoly::q(1), n);
            HeckeElement f2 = T(i, n) + HeckeElement::scalar(LaurentPoly::q(-1), n);
            CHECK(hecke_mul(f1, f2).is_zero());
        }
    }
    std::mt19937 rng(5);
    HeckeElement x = random_element(rng, 3);
    CHECK(hecke_mul(HeckeElement::unit(3), x) == x);
    CHECK(hecke_mul(x, HeckeElement::unit(3)) == x);
}

TEST_CASE("braid relations") {
    for (int n = 3; n <= 5; ++n) {
        for (int i = 1; i + 1 < n; ++i) {
            HeckeElement lhs = hecke_mul(hecke_mul(T(i, n), T(i + 1, n)), T(i, n));
            HeckeElement rhs = hecke_mul(hecke_mul(T(i + 1, n), T(i, n)), T(i + 1, n));
            CHECK(lhs == rhs);
            CHECK((lhs - rhs).is_zero());
        }
        for (int i = 1; i < n; ++i)
            for (int j = i + 2; j < n; ++j)
                CHECK(hecke_mul(T(i, n), T(j, n)) == hecke_mul(T(j, n), T(i, n)));
    }
}

TEST_CASE("t_inverse") {
    LaurentPoly twist = LaurentPoly::q(1) - LaurentPoly::q(-1);
    CHECK(t_inverse(1, 2) == T(1, 2) - HeckeElement::scalar(twist, 2));
    for (int n = 2; n <= 4; ++n)
        for (int i = 1; i < n; ++i) {
            CHECK(hecke_mul(t_inverse(i, n), T(i, n)) == HeckeElement::unit(n));
            CHECK(hecke_mul(T(i, n), t_inverse(i, n)) == HeckeElement::unit(n));
        }
    // t_inverse(2,3) * T_2 * T_2 = T_2
    CHECK(hecke_mul(hecke_mul(t_inverse(2, 3), T(2, 3)), T(2, 3)) == T(2, 3));
    CHECK_THROWS(t_inverse(3, 3));
    CHECK_THROWS(hecke_mul(T(1, 2), T(1, 3)));
}

TEST_CASE("kl generator") {
    CHECK(kl_generator(1, 2) == T(1, 2) + HeckeElement::scalar(LaurentPoly::q(-1), 2));
    // B_1 - T_1^{-1} = q e
    CHECK(kl_generator(1, 2) - t_inverse(1, 2) ==
          HeckeElement::scalar(LaurentPoly::q(1), 2));
    // B_1^2 = [2] B_1
    HeckeElement B1 = kl_generator(1, 2);
    CHECK(hecke_mul(B1, B1) == B1 * qint(2));
    CHECK_THROWS(kl_generator(0, 2));
}

TEST_CASE("kl longest element") {
    CHECK(kl_longest(1) == HeckeElement::unit(1));
    CHECK(kl_longest(2) == kl_generator(1, 2));
    // n = 3, enumerated by length
    HeckeElement expect(3);
    auto q = [](int e) { return LaurentPoly::q(e); };
    Permutation s1 = Permutation::transposition(3, 1), s2 = Permutation::transposition(3, 2);
    expect.add_term(Permutation::identity(3), q(-3));
    expect.add_term(s1, q(-2));
    expect.add_term(s2, q(-2));
    expect.add_term(s1 * s2, q(-1));
    expect.add_term(s2 * s1, q(-1));
    expect.add_term(s1 * s2 * s1, q(0));
    CHECK(kl_longest(3) == expect);
    // quasi-idempotence with eigenvalue [n]!
    for (int n = 2; n <= 4; ++n) {
        HeckeElement bw0 = kl_longest(n);
        CHECK(hecke_mul(bw0, bw0) == bw0 * qfactorial(n));
        for (int i = 1; i < n; ++i)
            CHECK(hecke_mul(kl_generator(i, n), bw0) == bw0 * qint(2));
    }
}

TEST_CASE("associativity on random triples") {
    std::mt19937 rng(17);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            HeckeElement x = random_element(rng, n);
            HeckeElement y = random_element(rng, n);
            HeckeElement z = random_element(rng, n);
            CHECK(hecke_mul(hecke_mul(x, y), z) == hecke_mul(x, hecke_mul(y, z)));
        }
    }
}

TEST_CASE("parser and printer") {
    HeckeElement x = HeckeElement::parse("T1*T2 + q^-1*T1", 3);
    HeckeElement expect = hecke_mul(T(1, 3), T(2, 3)) + T(1, 3) * LaurentPoly::q(-1);
    CHECK(x == expect);
    CHECK(HeckeElement::parse("e", 2) == HeckeElement::unit(2));
    CHECK(HeckeElement::parse(x.str(), 3) == x);
    // a big round-trip
    HeckeElement y = kl_longest(3);
    CHECK(HeckeElement::parse(y.str(), 3) == y);
    HeckeElement z = hecke_mul(t_inverse(1, 3), kl_generator(2, 3));
    CHECK(HeckeElement::parse(z.str(), 3) == z);
    CHECK(HeckeElement::parse("(q - q^-1)*T1 + e", 2) == hecke_mul(T(1, 2), T(1, 2)));
    CHECK_THROWS(HeckeElement::parse("T5", 3));
    CHECK_THROWS(HeckeElement::parse("T1 +", 3));
}
