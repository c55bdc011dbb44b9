#pragma once

#include "sspi/oracle.hpp"
#include "sspi/tables.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sspi {

// Deterministic random instance stream for verification runs: 2n values up
// to 10^6 (with deliberate occasional repeats so the tie order is exercised),
// matched into pairs uniformly at random.
Instance random_instance(int n, int k, std::uint64_t seed, std::uint64_t index);

// Per-element comparison of the oracle's exact acceptance probabilities
// against the closed-form tables.
struct ElementComparison {
    int element = 0;
    Dyadic oracle_prophet;
    Dyadic oracle_gambler;
    std::optional<Dyadic> table_prophet; // absent when n == 1 (no configuration)
    std::optional<Dyadic> table_gambler; // absent outside the bound's domain
    bool prophet_equal = true;
    bool gambler_bounded = true;
};

struct InstanceVerification {
    ExactResult exact;
    std::optional<Configuration> config; // n >= 2 only
    std::vector<ElementComparison> elements;
    Rational margin;                   // 2 E[gambler] - E[prophet]
    bool prophet_table_equal = true;   // p table matches exactly (k = 2, n >= 2)
    bool gambler_table_bounded = true; // q table is dominated (k = 2, n >= 2)
    bool margin_nonnegative = true;
    bool pass() const { return prophet_table_equal && gambler_table_bounded && margin_nonnegative; }
};

// Runs the oracle on the instance and, when instance.k == 2 and n >= 2,
// compares per-element probabilities against the tables. The margin check
// applies at every rank (for k <= 2 it is the proven theorem, beyond that
// the conjecture).
InstanceVerification verify_instance(const Instance& instance, const OracleOptions& options = {});

} // namespace sspi
