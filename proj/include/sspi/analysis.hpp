#pragma once

#include "sspi/core.hpp"
#include "sspi/oracle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sspi::analysis {

// The rank-2 lower-bound construction: samples (m, m, 0) and then two
// realizations equal to m arrive before the third item is revealed. beta is
// the number of items a deterministic mechanism has accepted at that point.
struct BadExampleParams {
    Rational m;
    Rational big_m; // the M >> m spike of the third item
    int beta = 0;   // in {0, 1, 2}
};

struct BadExampleGains {
    Rational prophet_gain_lb; // prophet's expected gain (a lower bound for beta = 2)
    Rational gambler_gain_ub; // the mechanism's expected gain (an upper bound for beta = 2)
};

// beta <= 1: the third item is deterministically 0, so the prophet gets 2m
// and the gambler beta*m. beta = 2: the third item is 0 or M with equal
// probability; the prophet gets at least M/2 and the gambler at most
// M/4 + 7m/4. Throws std::invalid_argument unless m > 0, M > m and beta is
// in {0, 1, 2}.
BadExampleGains bad_example_gains(const BadExampleParams& params);

// The ratio the construction forces for each choice of beta, and the bound
// it implies for every deterministic mechanism at this m, M.
struct LowerBoundCurve {
    bool beta0_unbounded = true;   // prophet 2m vs gambler 0
    Rational beta1_ratio;          // exactly 2, independent of M
    Rational beta2_ratio;          // 2M / (M + 7m), increasing in M/m with limit 2
    Rational deterministic_bound;  // min over beta of the forced ratio
};
LowerBoundCurve lower_bound_curve(const Rational& m, const Rational& big_m);

struct Violation {
    Instance instance;
    Rational margin; // 2 E[gambler] - E[prophet], negative here by definition
};

// Search over all multisets of at most max_n grid pairs (y > z, both from the
// grid) for instances where the mechanism is not 2-competitive at rank k.
// Instances equivalent under scaling are evaluated once (the margin's sign is
// scale-invariant).
struct SearchReport {
    int k = 0;
    int max_n = 0;
    std::vector<Rational> grid;
    std::uint64_t instances_checked = 0;   // after deduplication
    std::uint64_t duplicates_skipped = 0;  // scale-equivalent instances
    std::vector<Violation> violations;
};

struct SearchOptions {
    int threads = 0;
    OracleOptions oracle;
};

SearchReport conjecture_search(int k, int max_n, const std::vector<Rational>& grid,
                               const SearchOptions& options = {});

} // namespace sspi::analysis
