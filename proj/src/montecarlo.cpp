#include "sspi/montecarlo.hpp"

#include "sspi/errors.hpp"
#include "sspi/mechanism.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace sspi::montecarlo {

using mechanism::Keyed;
using mechanism::ranks_above;

void validate_spec(const DistributionSpec& spec) {
    if (spec.items.empty()) throw std::invalid_argument("spec needs at least one item");
    if (spec.k < 1) throw std::invalid_argument("rank k must be positive");
    for (std::size_t i = 0; i < spec.items.size(); ++i) {
        const ItemDist& item = spec.items[i];
        const std::string where = "item " + std::to_string(i + 1);
        auto nonneg = [&](double v, const char* what) {
            if (!(v >= 0) || !std::isfinite(v))
                throw std::invalid_argument(where + ": " + what + " must be a finite nonnegative number");
        };
        switch (item.kind) {
        case DistKind::point:
            nonneg(item.a, "value");
            break;
        case DistKind::two_point:
            nonneg(item.a, "v1");
            nonneg(item.b, "v2");
            break;
        case DistKind::uniform:
            nonneg(item.a, "lo");
            nonneg(item.b, "hi");
            if (item.a > item.b) throw std::invalid_argument(where + ": need lo <= hi");
            break;
        case DistKind::bernoulli:
            nonneg(item.a, "value");
            break;
        case DistKind::paired:
            nonneg(item.a, "y");
            nonneg(item.b, "z");
            if (item.a < item.b) throw std::invalid_argument(where + ": need y >= z");
            break;
        }
        if (item.kind == DistKind::two_point || item.kind == DistKind::bernoulli)
            if (!(item.p >= 0 && item.p <= 1))
                throw std::invalid_argument(where + ": probability must lie in [0, 1]");
    }
}

OrderPolicy parse_order_policy(const std::string& name) {
    if (name == "fixed") return OrderPolicy::fixed;
    if (name == "random") return OrderPolicy::random;
    if (name == "adversarial") return OrderPolicy::adversarial;
    throw std::invalid_argument("unknown order policy: '" + name + "'");
}

std::string to_string(OrderPolicy policy) {
    switch (policy) {
    case OrderPolicy::fixed: return "fixed";
    case OrderPolicy::random: return "random";
    case OrderPolicy::adversarial: return "adversarial";
    }
    return "?";
}

namespace {

double draw_value(const ItemDist& item, CounterRng& rng) {
    switch (item.kind) {
    case DistKind::point: return item.a;
    case DistKind::two_point: return rng.next_unit() < item.p ? item.a : item.b;
    case DistKind::uniform: return item.a + rng.next_unit() * (item.b - item.a);
    case DistKind::bernoulli: return rng.next_unit() < item.p ? item.a : 0.0;
    case DistKind::paired: break; // handled by the caller (one coin for both draws)
    }
    return 0.0;
}

struct Scratch {
    std::vector<double> samples;
    std::vector<double> realizations;
    std::vector<Keyed<double>> eligible;
    std::vector<int> order;
};

void draw_trial(const DistributionSpec& spec, CounterRng& rng, Scratch& s) {
    s.samples.clear();
    s.realizations.clear();
    for (const ItemDist& item : spec.items) {
        if (item.kind == DistKind::paired) {
            bool y_is_sample = rng.next_unit() < 0.5;
            s.samples.push_back(y_is_sample ? item.a : item.b);
            s.realizations.push_back(y_is_sample ? item.b : item.a);
        } else {
            s.samples.push_back(draw_value(item, rng));
            s.realizations.push_back(draw_value(item, rng));
        }
    }
}

// Gains of both parties for one drawn trial. Draw order is fixed (samples and
// realizations first, then any permutation randomness), so outcomes depend
// only on (seed, trial index, policy).
std::pair<double, double> play_trial(const DistributionSpec& spec, OrderPolicy policy, CounterRng& rng,
                                     Scratch& s) {
    const int n = spec.n();
    const int k = spec.k;
    mechanism::Threshold<double> threshold = mechanism::compute_threshold(s.samples, k);

    double prophet = 0;
    {
        s.eligible.clear();
        for (int i = 0; i < n; ++i) s.eligible.push_back(Keyed<double>{s.realizations[i], i + 1, false});
        std::sort(s.eligible.begin(), s.eligible.end(), ranks_above<double>);
        for (int i = 0; i < std::min(k, n); ++i) prophet += s.eligible[i].value;
    }

    double gambler = 0;
    switch (policy) {
    case OrderPolicy::fixed: {
        int accepted = 0;
        for (int i = 0; i < n && accepted < k; ++i) {
            if (threshold.exceeded_by(Keyed<double>{s.realizations[i], i + 1, false})) {
                gambler += s.realizations[i];
                ++accepted;
            }
        }
        break;
    }
    case OrderPolicy::random: {
        s.order.resize(n);
        for (int i = 0; i < n; ++i) s.order[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(s.order[i], s.order[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        int accepted = 0;
        for (int idx : s.order) {
            if (accepted >= k) break;
            if (threshold.exceeded_by(Keyed<double>{s.realizations[idx], idx + 1, false})) {
                gambler += s.realizations[idx];
                ++accepted;
            }
        }
        break;
    }
    case OrderPolicy::adversarial: {
        s.eligible.clear();
        for (int i = 0; i < n; ++i) {
            Keyed<double> key{s.realizations[i], i + 1, false};
            if (threshold.exceeded_by(key)) s.eligible.push_back(key);
        }
        // ascending: the gambler is fed the smallest eligible values first
        std::sort(s.eligible.begin(), s.eligible.end(),
                  [](const Keyed<double>& a, const Keyed<double>& b) { return ranks_above(b, a); });
        for (std::size_t i = 0; i < std::min<std::size_t>(k, s.eligible.size()); ++i)
            gambler += s.eligible[i].value;
        break;
    }
    }
    return {prophet, gambler};
}

} // namespace

TrialOutcome sample_trial(const DistributionSpec& spec, OrderPolicy policy, CounterRng& rng) {
    validate_spec(spec);
    Scratch s;
    draw_trial(spec, rng, s);
    auto [prophet, gambler] = play_trial(spec, policy, rng, s);
    TrialOutcome out;
    out.samples = s.samples;
    out.realizations = s.realizations;
    out.prophet_gain = prophet;
    out.gambler_gain = gambler;
    return out;
}

namespace {

struct BlockSums {
    double p = 0, g = 0, pp = 0, gg = 0, pg = 0;
};

constexpr std::uint64_t kBlockSize = 8192;
constexpr double kZ95 = 1.959963984540054;

BlockSums run_block(const DistributionSpec& spec, OrderPolicy policy, std::uint64_t seed,
                    std::uint64_t begin, std::uint64_t end, Scratch& s) {
    BlockSums sums;
    for (std::uint64_t t = begin; t < end; ++t) {
        CounterRng rng(seed, t);
        draw_trial(spec, rng, s);
        auto [prophet, gambler] = play_trial(spec, policy, rng, s);
        sums.p += prophet;
        sums.g += gambler;
        sums.pp += prophet * prophet;
        sums.gg += gambler * gambler;
        sums.pg += prophet * gambler;
    }
    return sums;
}

} // namespace

RatioEstimate estimate_ratio(const DistributionSpec& spec, std::uint64_t trials, std::uint64_t seed,
                             OrderPolicy policy, const McOptions& options) {
    validate_spec(spec);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    const std::uint64_t blocks = (trials + kBlockSize - 1) / kBlockSize;
    std::vector<BlockSums> block_sums(blocks);

    int threads = options.threads;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = static_cast<int>(std::min<std::uint64_t>(threads, blocks));

    auto worker = [&](int w) {
        Scratch s;
        for (std::uint64_t b = w; b < blocks; b += threads) {
            std::uint64_t begin = b * kBlockSize;
            std::uint64_t end = std::min(trials, begin + kBlockSize);
            block_sums[b] = run_block(spec, policy, seed, begin, end, s);
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    // combine in block order so the result never depends on the thread count
    BlockSums total;
    for (const BlockSums& b : block_sums) {
        total.p += b.p;
        total.g += b.g;
        total.pp += b.pp;
        total.gg += b.gg;
        total.pg += b.pg;
    }

    const double n = static_cast<double>(trials);
    RatioEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.mean_prophet = total.p / n;
    est.mean_gambler = total.g / n;
    double var_p = 0, var_g = 0, cov = 0;
    if (trials > 1) {
        var_p = std::max(0.0, (total.pp - total.p * total.p / n) / (n - 1));
        var_g = std::max(0.0, (total.gg - total.g * total.g / n) / (n - 1));
        cov = (total.pg - total.p * total.g / n) / (n - 1);
    }
    est.prophet_stderr = std::sqrt(var_p / n);
    est.gambler_stderr = std::sqrt(var_g / n);
    if (est.mean_gambler > 0) {
        est.ratio = est.mean_prophet / est.mean_gambler;
        const double mp = est.mean_prophet, mg = est.mean_gambler;
        double var_ratio = var_p / (n * mg * mg) + mp * mp * var_g / (n * mg * mg * mg * mg) -
                           2 * mp * cov / (n * mg * mg * mg);
        est.ratio_half_width = kZ95 * std::sqrt(std::max(0.0, var_ratio));
    } else {
        est.ratio_unbounded = est.mean_prophet > 0;
    }
    return est;
}

std::optional<Instance> paired_instance_of(const DistributionSpec& spec) {
    for (const ItemDist& item : spec.items)
        if (item.kind != DistKind::paired) return std::nullopt;
    Instance instance;
    instance.k = spec.k;
    for (const ItemDist& item : spec.items)
        instance.pairs.push_back(ItemPair{rational_from_double(item.a), rational_from_double(item.b)});
    return instance;
}

DistributionSpec spec_from_instance(const Instance& instance) {
    DistributionSpec spec;
    spec.k = instance.k;
    for (const ItemPair& pair : instance.pairs)
        spec.items.push_back(ItemDist::paired(to_double(pair.y), to_double(pair.z)));
    return spec;
}

namespace {

double number_field(const nlohmann::json& obj, const std::string& name, const std::string& where) {
    if (!obj.contains(name)) throw ParseError(where + ": missing field '" + name + "'");
    const auto& v = obj[name];
    if (!v.is_number()) throw ParseError(where + ": field '" + name + "' must be a number");
    return v.get<double>();
}

} // namespace

DistributionSpec load_spec(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("spec file: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("spec file: top level must be an object");
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
        throw ParseError("spec file: field 'version' must be the integer 1");
    if (!doc.contains("k") || !doc["k"].is_number_integer())
        throw ParseError("spec file: missing integer field 'k'");
    if (!doc.contains("items") || !doc["items"].is_array())
        throw ParseError("spec file: missing array field 'items'");

    DistributionSpec spec;
    spec.k = doc["k"].get<int>();
    int index = 0;
    for (const auto& entry : doc["items"]) {
        ++index;
        const std::string where = "items[" + std::to_string(index) + "]";
        if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string())
            throw ParseError(where + ": expected an object with a string field 'kind'");
        const std::string kind = entry["kind"].get<std::string>();
        if (kind == "point") {
            spec.items.push_back(ItemDist::point(number_field(entry, "value", where)));
        } else if (kind == "two_point") {
            spec.items.push_back(ItemDist::two_point(number_field(entry, "v1", where),
                                                     number_field(entry, "p", where),
                                                     number_field(entry, "v2", where)));
        } else if (kind == "uniform") {
            spec.items.push_back(ItemDist::uniform(number_field(entry, "lo", where),
                                                   number_field(entry, "hi", where)));
        } else if (kind == "bernoulli") {
            spec.items.push_back(ItemDist::bernoulli(number_field(entry, "value", where),
                                                     number_field(entry, "p", where)));
        } else if (kind == "paired") {
            spec.items.push_back(ItemDist::paired(number_field(entry, "y", where),
                                                  number_field(entry, "z", where)));
        } else {
            throw ParseError(where + ": unknown kind '" + kind + "'");
        }
    }
    try {
        validate_spec(spec);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("spec file: ") + e.what());
    }
    return spec;
}

DistributionSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file: " + path);
    return load_spec(in);
}

std::string spec_to_json(const DistributionSpec& spec) {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["k"] = spec.k;
    doc["items"] = nlohmann::json::array();
    for (const ItemDist& item : spec.items) {
        nlohmann::json entry;
        switch (item.kind) {
        case DistKind::point: entry = {{"kind", "point"}, {"value", item.a}}; break;
        case DistKind::two_point: entry = {{"kind", "two_point"}, {"v1", item.a}, {"p", item.p}, {"v2", item.b}}; break;
        case DistKind::uniform: entry = {{"kind", "uniform"}, {"lo", item.a}, {"hi", item.b}}; break;
        case DistKind::bernoulli: entry = {{"kind", "bernoulli"}, {"value", item.a}, {"p", item.p}}; break;
        case DistKind::paired: entry = {{"kind", "paired"}, {"y", item.a}, {"z", item.b}}; break;
        }
        doc["items"].push_back(entry);
    }
    return doc.dump();
}

} // namespace sspi::montecarlo
