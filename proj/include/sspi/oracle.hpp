#pragma once

#include "sspi/core.hpp"
#include "sspi/dyadic.hpp"

#include <optional>
#include <vector>

namespace sspi {

struct OracleOptions {
    int max_n = 24; // enumeration cap; exceeding it is an error, never a silent fallback
    int threads = 0; // 0 = hardware concurrency
};

// Exact expectations over all 2^n sample/realization assignments, with the
// gambler facing the adversarial arrival order. Acceptance probabilities are
// kept with denominator exactly 2^n so they compare against the closed-form
// tables without any reduction step.
struct ExactResult {
    Rational prophet_expectation;
    Rational gambler_expectation;
    std::vector<Dyadic> prophet_accept_prob; // index j-1 for element j
    std::vector<Dyadic> gambler_accept_prob;
    std::optional<Rational> ratio; // prophet/gambler; empty when gambler expectation is 0
    bool ratio_unbounded = false;  // gambler 0 but prophet > 0
};

ExactResult enumerate_pairwise(const Instance& instance, const OracleOptions& options = {});

struct GamblerGain {
    std::vector<int> accepted_elements; // 1-based, ascending
    Rational gain;
};

// The gambler's gain under the order that minimizes it: the threshold is the
// k-th largest sample value, and of the realizations above it the k smallest
// are the ones accepted.
GamblerGain adversarial_gambler_gain(const ElementTable& table, const Assignment& assignment, int k);

// Certifies the adversary: true iff the minimum of the gambler's gain over
// all n! arrival orders equals adversarial_gambler_gain. Exact comparison.
// Throws ResourceCapError for n > 8.
bool worst_order_check(const ElementTable& table, const Assignment& assignment, int k);

// 2*E[gambler] - E[prophet], exact; nonnegative is the 2-competitiveness
// assertion for k <= 2.
Rational competitive_margin(const Instance& instance, const OracleOptions& options = {});

} // namespace sspi
