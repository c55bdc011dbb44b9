#include "sspi/mechanism.hpp"

#include "sspi/rational.hpp"
#include "sspi/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace sspi;
using namespace sspi::mechanism;

namespace {

std::vector<Rational> values(std::initializer_list<long> vs) {
    std::vector<Rational> out;
    for (long v : vs) out.emplace_back(BigInt(v), 1);
    return out;
}

} // namespace

TEST_CASE("threshold is the k-th largest sample") {
    auto t = compute_threshold(values({5, 2, 7}), 2);
    REQUIRE(t.key.has_value());
    CHECK(t.key->value == Rational(5));
}

TEST_CASE("threshold disengages when n < k") {
    auto t = compute_threshold(values({3}), 2);
    CHECK_FALSE(t.key.has_value());
    // everything exceeds a disengaged threshold, even a zero realization
    CHECK(t.exceeded_by(Keyed<Rational>{Rational(0), 1, false}));
}

TEST_CASE("threshold tie goes to the lower-ranked duplicate") {
    auto t = compute_threshold(values({6, 6, 0}), 2);
    REQUIRE(t.key.has_value());
    CHECK(t.key->value == Rational(6));
    CHECK(t.key->item == 2);
    // a realization equal to T does not exceed it
    CHECK_FALSE(t.exceeded_by(Keyed<Rational>{Rational(6), 3, false}));
    CHECK(t.exceeded_by(Keyed<Rational>{Rational(7), 3, false}));
}

TEST_CASE("threshold rejects invalid rank and negative samples") {
    CHECK_THROWS_AS(compute_threshold(values({1, 2}), 0), std::invalid_argument);
    CHECK_THROWS_AS(compute_threshold(std::vector<Rational>{Rational(-1)}, 1), std::invalid_argument);
}

TEST_CASE("gambler accepts the first k arrivals above T") {
    Threshold<Rational> t{Keyed<Rational>{Rational(5), 0, true}};
    ArrivalSequence<Rational> arrivals{{1, Rational(7)}, {2, Rational(6)}, {3, Rational(9)}};
    auto out = run_gambler(t, arrivals, 2);
    CHECK(out.accepted_items == std::vector<int>{1, 2});
    CHECK(out.gain == Rational(13));

    ArrivalSequence<Rational> low{{1, Rational(3)}, {2, Rational(4)}};
    auto nothing = run_gambler(t, low, 2);
    CHECK(nothing.accepted_items.empty());
    CHECK(nothing.gain == Rational(0));
}

TEST_CASE("prophet takes the top min(k, n) realizations") {
    auto out = prophet_select(values({4, 1, 3}), 2);
    CHECK(out.gain == Rational(7));
    auto single = prophet_select(values({5}), 2);
    CHECK(single.gain == Rational(5));
}

TEST_CASE("gambler never exceeds k accepts and every accept is above T") {
    CounterRng rng(11, 0);
    for (int round = 0; round < 200; ++round) {
        int n = 1 + static_cast<int>(rng.next_below(8));
        int k = 1 + static_cast<int>(rng.next_below(4));
        std::vector<Rational> samples, realizations;
        for (int i = 0; i < n; ++i) {
            samples.emplace_back(BigInt(rng.next_below(20)), 1);
            realizations.emplace_back(BigInt(rng.next_below(20)), 1);
        }
        auto t = compute_threshold(samples, k);
        ArrivalSequence<Rational> arrivals;
        for (int i = 0; i < n; ++i) arrivals.emplace_back(i + 1, realizations[i]);
        auto gambler = run_gambler(t, arrivals, k);
        CHECK(static_cast<int>(gambler.accepted_items.size()) <= k);
        for (int item : gambler.accepted_items)
            CHECK(t.exceeded_by(Keyed<Rational>{realizations[item - 1], item, false}));

        // the prophet's top-k dominates any k realizations the gambler takes
        auto prophet = prophet_select(realizations, k);
        CHECK(prophet.gain >= gambler.gain);

        // permuting arrivals never changes the number of accepted items
        // beyond min(k, #eligible)
        int eligible = 0;
        for (int i = 0; i < n; ++i)
            if (t.exceeded_by(Keyed<Rational>{realizations[i], i + 1, false})) ++eligible;
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 1);
        for (int shuffle = 0; shuffle < 5; ++shuffle) {
            for (int i = n - 1; i > 0; --i)
                std::swap(order[i], order[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
            ArrivalSequence<Rational> permuted;
            for (int item : order) permuted.emplace_back(item, realizations[item - 1]);
            auto outcome = run_gambler(t, permuted, k);
            CHECK(static_cast<int>(outcome.accepted_items.size()) == std::min(k, eligible));
        }
    }
}

TEST_CASE("k=1 equals the single-choice rule: first realization above the max sample") {
    CounterRng rng(12, 0);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + static_cast<int>(rng.next_below(6));
        std::vector<Rational> samples, realizations;
        for (int i = 0; i < n; ++i) {
            samples.emplace_back(BigInt(rng.next_below(10)), 1);
            realizations.emplace_back(BigInt(rng.next_below(10)), 1);
        }
        auto t = compute_threshold(samples, 1);
        REQUIRE(t.key.has_value());
        Keyed<Rational> max_sample = *t.key;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            Keyed<Rational> key{samples[i], static_cast<int>(i) + 1, true};
            CHECK_FALSE(ranks_above(key, max_sample));
        }
        ArrivalSequence<Rational> arrivals;
        for (int i = 0; i < n; ++i) arrivals.emplace_back(i + 1, realizations[i]);
        auto outcome = run_gambler(t, arrivals, 1);
        std::optional<int> expected;
        for (int i = 0; i < n && !expected; ++i)
            if (ranks_above(Keyed<Rational>{realizations[i], i + 1, false}, max_sample)) expected = i + 1;
        if (expected)
            CHECK(outcome.accepted_items == std::vector<int>{*expected});
        else
            CHECK(outcome.accepted_items.empty());
    }
}
