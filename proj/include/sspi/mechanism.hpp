#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sspi::mechanism {

// A value placed into the global tie-broken order: ties are resolved samples
// above realizations first, then by item id. Sample-above-realization makes
// the strict test "realization > threshold" reject a realization that merely
// equals the threshold value, which is what the strict r > T in the
// mechanism means once the order is total.
template <class V>
struct Keyed {
    V value{};
    int item = 0; // 1-based
    bool is_sample = false;
};

template <class V>
bool ranks_above(const Keyed<V>& a, const Keyed<V>& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.is_sample != b.is_sample) return a.is_sample;
    return a.item < b.item;
}

// The k-th largest sample, or engaged == false when n < k. A disengaged
// threshold ranks below every arrival, so every realization is accepted
// until the budget runs out.
template <class V>
struct Threshold {
    std::optional<Keyed<V>> key;

    bool exceeded_by(const Keyed<V>& realization) const {
        return !key.has_value() || ranks_above(realization, *key);
    }
};

// Arrival order as presented to the gambler; each item appears exactly once.
template <class V>
using ArrivalSequence = std::vector<std::pair<int, V>>; // (item id, realized value)

template <class V>
struct SelectionOutcome {
    std::vector<int> accepted_items;
    V gain{};
};

// T = k-th largest sample when n >= k, disengaged otherwise. Item ids are the
// 1-based sample positions. Throws on k < 1 or a negative sample.
template <class V>
Threshold<V> compute_threshold(const std::vector<V>& samples, int k) {
    if (k < 1) throw std::invalid_argument("rank k must be positive");
    for (const V& s : samples)
        if (s < V{}) throw std::invalid_argument("samples must be nonnegative");
    Threshold<V> t;
    if (static_cast<int>(samples.size()) < k) return t;
    std::vector<Keyed<V>> keys;
    keys.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        keys.push_back(Keyed<V>{samples[i], static_cast<int>(i) + 1, true});
    std::nth_element(keys.begin(), keys.begin() + (k - 1), keys.end(), ranks_above<V>);
    t.key = keys[k - 1];
    return t;
}

// Scans arrivals in order and accepts a realization iff it exceeds the
// threshold in the tie-broken order and fewer than k items were accepted.
template <class V>
SelectionOutcome<V> run_gambler(const Threshold<V>& threshold, const ArrivalSequence<V>& arrivals, int k) {
    if (k < 1) throw std::invalid_argument("rank k must be positive");
    SelectionOutcome<V> out;
    for (const auto& [item, value] : arrivals) {
        if (static_cast<int>(out.accepted_items.size()) >= k) break;
        if (threshold.exceeded_by(Keyed<V>{value, item, false})) {
            out.accepted_items.push_back(item);
            out.gain += value;
        }
    }
    return out;
}

// The offline optimum: the min(k, n) largest realizations.
template <class V>
SelectionOutcome<V> prophet_select(const std::vector<V>& realizations, int k) {
    if (k < 1) throw std::invalid_argument("rank k must be positive");
    for (const V& r : realizations)
        if (r < V{}) throw std::invalid_argument("realizations must be nonnegative");
    std::vector<Keyed<V>> keys;
    keys.reserve(realizations.size());
    for (std::size_t i = 0; i < realizations.size(); ++i)
        keys.push_back(Keyed<V>{realizations[i], static_cast<int>(i) + 1, false});
    std::sort(keys.begin(), keys.end(), ranks_above<V>);
    SelectionOutcome<V> out;
    int take = std::min<int>(k, static_cast<int>(keys.size()));
    for (int i = 0; i < take; ++i) {
        out.accepted_items.push_back(keys[i].item);
        out.gain += keys[i].value;
    }
    return out;
}

} // namespace sspi::mechanism
