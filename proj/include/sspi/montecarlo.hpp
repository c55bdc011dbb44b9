#pragma once

#include "sspi/core.hpp"
#include "sspi/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sspi::montecarlo {

enum class DistKind {
    point,     // always v
    two_point, // v1 with probability p, else v2; sample and realization independent
    uniform,   // continuous uniform on [lo, hi]
    bernoulli, // v with probability p, else 0
    paired,    // one fair coin per trial: (sample, realization) = (y, z) or (z, y)
};

struct ItemDist {
    DistKind kind = DistKind::point;
    double a = 0; // point/bernoulli value, two_point v1, uniform lo, paired y
    double b = 0; // two_point v2, uniform hi, paired z
    double p = 0; // two_point / bernoulli probability of a

    static ItemDist point(double v) { return {DistKind::point, v, 0, 0}; }
    static ItemDist two_point(double v1, double prob, double v2) { return {DistKind::two_point, v1, v2, prob}; }
    static ItemDist uniform(double lo, double hi) { return {DistKind::uniform, lo, hi, 0}; }
    static ItemDist bernoulli(double v, double prob) { return {DistKind::bernoulli, v, 0, prob}; }
    static ItemDist paired(double y, double z) { return {DistKind::paired, y, z, 0}; }
};

struct DistributionSpec {
    int k = 2;
    std::vector<ItemDist> items;

    int n() const { return static_cast<int>(items.size()); }
};

// Throws std::invalid_argument on negative support points, probabilities
// outside [0,1], lo > hi, or paired y < z.
void validate_spec(const DistributionSpec& spec);

enum class OrderPolicy {
    fixed,       // items arrive in spec order
    random,      // uniformly random arrival order per trial
    adversarial, // eligible realizations presented in ascending value
};

OrderPolicy parse_order_policy(const std::string& name);
std::string to_string(OrderPolicy policy);

struct TrialOutcome {
    std::vector<double> samples;
    std::vector<double> realizations;
    double gambler_gain = 0;
    double prophet_gain = 0;
};

// One trial on the stream keyed by (seed, trial index): draws each item's
// sample then realization, forms the threshold, and plays both parties.
TrialOutcome sample_trial(const DistributionSpec& spec, OrderPolicy policy, CounterRng& rng);

struct RatioEstimate {
    double mean_prophet = 0;
    double mean_gambler = 0;
    std::optional<double> ratio; // empty when the gambler mean is 0
    bool ratio_unbounded = false;
    double ci_level = 0.95;
    double prophet_stderr = 0;
    double gambler_stderr = 0;
    double ratio_half_width = 0; // delta method with covariance, at ci_level
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct McOptions {
    int threads = 0; // 0 = hardware concurrency
};

// Bit-identical for fixed (spec, trials, seed, policy) regardless of thread
// count: trials are grouped in fixed-size blocks, each block is summed
// sequentially, and blocks are combined in index order.
RatioEstimate estimate_ratio(const DistributionSpec& spec, std::uint64_t trials, std::uint64_t seed,
                             OrderPolicy policy, const McOptions& options = {});

// When every item is paired, the spec is exactly the pairwise model and maps
// to an Instance the oracle can evaluate. Values convert from their binary
// double representation, which is exact.
std::optional<Instance> paired_instance_of(const DistributionSpec& spec);
DistributionSpec spec_from_instance(const Instance& instance);

// --- Spec files -----------------------------------------------------------
//
// JSON document: {"version": 1, "k": <int>, "items": [...]} with one object
// per item; see the README for the per-kind fields.
DistributionSpec load_spec(std::istream& in);
DistributionSpec load_spec_file(const std::string& path);
std::string spec_to_json(const DistributionSpec& spec);

} // namespace sspi::montecarlo
