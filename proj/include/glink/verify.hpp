#pragma once

#include <string>
#include <vector>

namespace glink {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Quadratic, braid, and quasi-idempotent relations in H_n, n <= max_n.
std::vector<SuiteResult> verify_hecke(int max_n = 5);
/// Circle, digon, associativity, zig-zag, and label > N relations, N <= max_rank.
std::vector<SuiteResult> verify_moy(int max_rank = 4);
/// Skein relation on randomized closures and the operator identity, gl and sl.
std::vector<SuiteResult> verify_skein(int max_rank = 3, int trials = 100, unsigned seed = 1);
/// det-slide ratio c^{2Nb}(-q)^{-2b}, trivialized exactly when c^N = -q.
std::vector<SuiteResult> verify_detslide();
/// Positive-curl factor versus the decategorified grading shift.
std::vector<SuiteResult> verify_framing();
/// Euler characteristic of P = X^2 homology equals the gl(2) invariant on
/// the corpus.
std::vector<SuiteResult> verify_euler(int threads = 1);
/// Deformed (Lee) dimensions and the Hopf coloring split on the corpus.
std::vector<SuiteResult> verify_lee(int threads = 1);
/// CRT idempotent identities for random deformations.
std::vector<SuiteResult> verify_crt(int random_trials = 20, unsigned seed = 7);
/// Branching-rule dimension identities for all N <= 6.
std::vector<SuiteResult> verify_branching();
/// Neck-cutting commutator identity on Hopf and trefoil.
std::vector<SuiteResult> verify_commutator();
/// Base-point sign flip across an under-passage on the trefoil.
std::vector<SuiteResult> verify_basepoint();

std::vector<SuiteResult> verify_all(int threads = 1);

}  // namespace glink
