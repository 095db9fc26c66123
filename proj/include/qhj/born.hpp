#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qhj {

// Two-outcome measurement weights; p + q must equal 1.
struct TwoStateWeights {
    double p = 0.5;
    double q = 0.5;
};
void validate(const TwoStateWeights& w);

// Exact outcome statistics of N repeated two-state measurements:
// probs[r] = C(N,r) p^r q^(N-r), with moments of the frequency f = r/N.
struct BranchDistribution {
    std::int64_t n_measurements = 0;
    std::vector<double> probs; // size N+1
    double mean_f = 0.0;
    double var_f = 0.0;
    std::array<double, 5> central_moments{}; // of f, orders 0..4
};

// Stable (log-gamma) evaluation; valid for 1 <= N <= 10^6.
BranchDistribution branch_distribution(const TwoStateWeights& w, std::int64_t n);

// Central moment of f = r/N via the generating-function operator (p d/dp)
// applied m times to (p+q)^N symbolically, with p+q = 1 substituted at the
// end. Supported orders: 1..4.
double gf_central_moment(const TwoStateWeights& w, std::int64_t n, int order);

// Literal sum over all 2^N outcome sequences (N <= 20); the sequence-sum form
// that the binomial expression collapses.
std::vector<double> enumerate_outcome_probs(const TwoStateWeights& w, int n);

struct BranchSimResult {
    std::vector<std::int64_t> counts; // histogram over r, size N+1
    double mean_f = 0.0;
    double var_f = 0.0;
    double ks = 0.0; // against the exact distribution
};

// n_sequences independent N-measurement runs with a counter-addressed PRNG;
// bit-reproducible for a given seed and trivially parallelizable.
BranchSimResult simulate_branching(const TwoStateWeights& w, std::int64_t n,
                                   std::int64_t n_sequences, std::uint64_t seed);

} // namespace qhj
