#pragma once

#include "sspi/core.hpp"
#include "sspi/dyadic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sspi {

// The abstract position data the closed-form acceptance probabilities depend
// on: the two smallest z-positions j* < k* in the descending value order and
// the positions j^y, k^y of their paired y values.
struct Configuration {
    int two_n = 0;
    int j_star = 0;
    int k_star = 0;
    int j_y = 0;
    int k_y = 0;
};

// Throws std::invalid_argument unless two_n is even and >= 4,
// 1 <= j_y < j_star < k_star <= two_n, 1 <= k_y < k_star and the four
// positions are pairwise distinct.
void validate_configuration(const Configuration& config);

// The configuration realized by an instance's element table (requires n >= 2,
// otherwise k* does not exist).
Configuration configuration_of(const ElementTable& table);

// Probability that the rank-2 prophet accepts element j. Exact, not a bound.
Dyadic prophet_prob(int j, const Configuration& config);

// Lower bound on the probability that the rank-2 gambler accepts element j
// under the adversarial arrival order. Defined for 1 <= j < k* only; other
// elements throw std::domain_error (they are not bounded, and substituting 0
// would silently weaken comparisons against the oracle).
Dyadic gambler_prob_lb(int j, const Configuration& config);

// Sum of prophet_prob over all elements; equals exactly 2 for every valid
// configuration (the prophet always accepts exactly two elements).
Dyadic prophet_mass(const Configuration& config);

// Every position tuple satisfying the Configuration invariants, in
// lexicographic order. Polynomial in two_n: positions only, not matchings.
std::vector<Configuration> enumerate_configs(int two_n);

// Checks 2 * sum_{j<=i} q_j >= sum_{j<=i} p_j for every prefix i <= k*, with
// q_{k*} contributing 0 (it is outside the table's domain; the last prefix is
// carried by q_{k*-1} alone). first_violation is the smallest failing i.
struct PrefixCheck {
    bool pass = true;
    std::optional<int> first_violation;
};
PrefixCheck check_prefix_inequality(const Configuration& config);

// The prefix inequality decomposes into three kinds of blocks, each checked
// exactly on its own:
//   termwise    2 q_j >= p_j                 for j < j* and j* < j < k*
//   star block  2 (q_{j*-1} + q_{j*}) >= p_{j*-1} + p_{j*}, absorbing p_{k*}
//               when k* = j*+1 (then with exact equality)
//   tail pair   2 q_{k*-1} >= p_{k*-1} + p_{k*} when k* > j*+1 (always an
//               exact equality)
struct BlockChecks {
    std::vector<std::pair<int, bool>> termwise; // (j, pass)
    bool termwise_all = true;
    std::optional<bool> tail_pair; // engaged iff k* > j*+1
    bool tail_pair_equality = false;
    bool star_block = false;
    bool star_block_absorbs_tail = false; // the k* = j*+1 branch
    bool star_block_equality = false;
    bool all() const;
};
BlockChecks check_block_inequalities(const Configuration& config);

// Exhaustive sweep over every configuration with two_n = 4, 6, ..., max_two_n:
// prefix inequality, block inequalities, and the prophet-mass identity.
struct ConfigSweep {
    std::uint64_t configurations_checked = 0;
    std::uint64_t prefix_violations = 0;
    std::uint64_t block_violations = 0;
    std::uint64_t mass_violations = 0;
    std::uint64_t tail_pair_checked = 0;
    std::uint64_t tail_pair_equalities = 0;
    std::uint64_t star_absorbing_checked = 0;
    std::uint64_t star_absorbing_equalities = 0;
    std::vector<Configuration> violating; // capped sample of failures
    bool pass() const { return prefix_violations == 0 && block_violations == 0 && mass_violations == 0; }
};
ConfigSweep check_all_configs(int max_two_n, int threads = 0);

} // namespace sspi
