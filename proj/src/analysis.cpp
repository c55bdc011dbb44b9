#include "sspi/analysis.hpp"

#include "sspi/errors.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

namespace sspi::analysis {

namespace {

void validate_bad_example(const Rational& m, const Rational& big_m) {
    if (m <= 0) throw std::invalid_argument("bad example: m must be positive");
    if (big_m <= m) throw std::invalid_argument("bad example: M must exceed m");
}

} // namespace

BadExampleGains bad_example_gains(const BadExampleParams& params) {
    validate_bad_example(params.m, params.big_m);
    if (params.beta < 0 || params.beta > 2)
        throw std::invalid_argument("bad example: beta must be 0, 1 or 2");

    BadExampleGains gains;
    if (params.beta <= 1) {
        // first scenario: items worth (m, m, 0) deterministically
        gains.prophet_gain_lb = 2 * params.m;
        gains.gambler_gain_ub = params.beta * params.m;
    } else {
        // second scenario: the third item is 0 or M with probability 1/2;
        // gambler <= 1/2*(2m) + 1/2*(1/2*(2m) + 1/2*(m+M)) = M/4 + 7m/4
        gains.prophet_gain_lb = params.big_m / 2;
        gains.gambler_gain_ub = params.big_m / 4 + 7 * params.m / 4;
    }
    return gains;
}

LowerBoundCurve lower_bound_curve(const Rational& m, const Rational& big_m) {
    validate_bad_example(m, big_m);
    LowerBoundCurve curve;
    BadExampleGains beta1 = bad_example_gains({m, big_m, 1});
    BadExampleGains beta2 = bad_example_gains({m, big_m, 2});
    curve.beta1_ratio = beta1.prophet_gain_lb / beta1.gambler_gain_ub;
    curve.beta2_ratio = beta2.prophet_gain_lb / beta2.gambler_gain_ub;
    curve.deterministic_bound = std::min(curve.beta1_ratio, curve.beta2_ratio);
    return curve;
}

namespace {

// Scale-canonical form: divide every value by the largest one. Both
// expectations are homogeneous of degree 1 in the values, so two instances
// with the same canonical form have margins of the same sign.
std::string canonical_key(std::vector<ItemPair> pairs) {
    Rational max_value = 0;
    for (const ItemPair& p : pairs) max_value = std::max(max_value, p.y);
    if (max_value > 0)
        for (ItemPair& p : pairs) {
            p.y /= max_value;
            p.z /= max_value;
        }
    std::sort(pairs.begin(), pairs.end(), [](const ItemPair& a, const ItemPair& b) {
        return a.y != b.y ? a.y > b.y : a.z > b.z;
    });
    std::string key;
    for (const ItemPair& p : pairs) key += to_fraction_string(p.y) + "," + to_fraction_string(p.z) + ";";
    return key;
}

} // namespace

SearchReport conjecture_search(int k, int max_n, const std::vector<Rational>& grid,
                               const SearchOptions& options) {
    if (k < 1) throw std::invalid_argument("rank k must be positive");
    if (max_n < 1) throw std::invalid_argument("max_n must be positive");
    if (max_n > options.oracle.max_n)
        throw ResourceCapError("search up to n = " + std::to_string(max_n) +
                               " exceeds the enumeration cap of " +
                               std::to_string(options.oracle.max_n));
    if (grid.size() < 2) throw std::invalid_argument("grid needs at least two values");
    for (const Rational& v : grid)
        if (v < 0) throw std::invalid_argument("grid values must be nonnegative");

    SearchReport report;
    report.k = k;
    report.max_n = max_n;
    report.grid = grid;
    std::sort(report.grid.begin(), report.grid.end());
    report.grid.erase(std::unique(report.grid.begin(), report.grid.end()), report.grid.end());

    // all ordered pairs y > z over the grid
    std::vector<ItemPair> pair_types;
    for (std::size_t a = 0; a < report.grid.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            pair_types.push_back(ItemPair{report.grid[a], report.grid[b]});

    // multisets of pair types, deduplicated up to scaling
    std::set<std::string> seen;
    std::vector<Instance> todo;
    std::vector<int> choice;
    auto emit = [&]() {
        Instance instance;
        instance.k = k;
        for (int c : choice) instance.pairs.push_back(pair_types[c]);
        if (!seen.insert(canonical_key(instance.pairs)).second) {
            ++report.duplicates_skipped;
            return;
        }
        todo.push_back(std::move(instance));
    };
    auto extend = [&](auto&& self, int first) -> void {
        if (!choice.empty()) emit();
        if (static_cast<int>(choice.size()) == max_n) return;
        for (int c = first; c < static_cast<int>(pair_types.size()); ++c) {
            choice.push_back(c);
            self(self, c);
            choice.pop_back();
        }
    };
    extend(extend, 0);

    report.instances_checked = todo.size();

    int threads = options.threads;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = std::min<int>(threads, 8);
    if (todo.size() < 64) threads = 1;

    std::mutex mutex;
    auto worker = [&](int w) {
        std::vector<Violation> local;
        for (std::size_t i = w; i < todo.size(); i += threads) {
            Rational margin = competitive_margin(todo[i], options.oracle);
            if (margin < 0) local.push_back(Violation{todo[i], margin});
        }
        std::scoped_lock lock(mutex);
        for (Violation& v : local) report.violations.push_back(std::move(v));
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    // deterministic report order regardless of which worker found what
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                  return canonical_key(a.instance.pairs) < canonical_key(b.instance.pairs);
              });
    return report;
}

} // namespace sspi::analysis
