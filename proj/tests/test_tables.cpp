#include "sspi/tables.hpp"

#include "sspi/oracle.hpp"
#include "sspi/verification.hpp"

#include <doctest.h>

#include <set>

using namespace sspi;

namespace {

const Configuration kWorked{4, 2, 4, 1, 3}; // from the instance [(4,3),(2,1)]

Instance make(std::vector<std::pair<long, long>> pairs, int k = 2) {
    Instance instance;
    instance.k = k;
    for (auto [y, z] : pairs)
        instance.pairs.push_back(ItemPair{Rational(BigInt(y), 1), Rational(BigInt(z), 1)});
    return instance;
}

} // namespace

TEST_CASE("prophet probability table cases") {
    Configuration c{12, 4, 8, 2, 5};
    CHECK(prophet_prob(1, c) == Dyadic(1, 1));            // j < j*: j/2^j
    CHECK(prophet_prob(3, c) == Dyadic(3, 3));
    CHECK(prophet_prob(4, c) == Dyadic(3, 3));            // j = j*: (j-1)/2^(j-1)
    CHECK(prophet_prob(6, c) == Dyadic(1, 4));            // j* < j < k*: 1/2^(j-2)
    CHECK(prophet_prob(8, c) == Dyadic(1, 5));            // j = k*: 1/2^(j-3)
    CHECK(prophet_prob(9, c) == Dyadic::zero());          // j > k*
    CHECK(prophet_prob(12, c) == Dyadic::zero());

    Configuration j2{6, 2, 5, 1, 3};
    CHECK(prophet_prob(2, j2) == Dyadic(1, 1)); // (j-1)/2^(j-1) at j = j* = 2

    for (int j = 1; j <= 4; ++j) CHECK(prophet_prob(j, kWorked) == Dyadic(1, 1));
}

TEST_CASE("gambler bound table cases") {
    Configuration c{12, 5, 9, 2, 7};
    CHECK(gambler_prob_lb(1, c) == Dyadic(2, 3));   // (3j-1)/2^(j+2), j <= j*-2
    CHECK(gambler_prob_lb(3, c) == Dyadic(8, 5));
    // j = j*-1 = 4, k* > j*+1, j*-1 != j^y: (4j-3)/2^(j+2)
    CHECK(gambler_prob_lb(4, c) == Dyadic(13, 6));
    // j = j*: 3/2^(j+1)
    CHECK(gambler_prob_lb(5, c) == Dyadic(3, 6));
    // j* < j < k*-1: 3/2^j
    CHECK(gambler_prob_lb(6, c) == Dyadic(3, 6));
    CHECK(gambler_prob_lb(7, c) == Dyadic(3, 7));
    // j = k*-1: 1/2^(j-2)
    CHECK(gambler_prob_lb(8, c) == Dyadic(1, 6));

    Configuration adjacent{12, 5, 6, 4, 2}; // k* = j*+1, j*-1 = j^y
    CHECK(gambler_prob_lb(4, adjacent) == Dyadic(16, 6)); // 4j/2^(j+2)
    CHECK(gambler_prob_lb(5, adjacent) == Dyadic(4, 6));  // 4/2^(j+1)

    Configuration attached{12, 5, 9, 4, 2}; // k* > j*+1, j*-1 = j^y
    CHECK(gambler_prob_lb(4, attached) == Dyadic(14, 6)); // (4j-2)/2^(j+2)

    Configuration wide{12, 3, 9, 1, 2};
    CHECK(gambler_prob_lb(1, wide) == Dyadic(2, 3)); // = 1/4
    Configuration j2{6, 2, 5, 1, 3};
    CHECK(gambler_prob_lb(2, j2) == Dyadic(3, 3)); // 3/8 at j = j* = 2
    CHECK(gambler_prob_lb(1, kWorked) == Dyadic(2, 3)); // (4j-2)/2^(j+2) = 1/4
    CHECK(gambler_prob_lb(3, kWorked) == Dyadic(1, 1)); // k*-1 case: 1/2
}

TEST_CASE("gambler bound is undefined outside its domain") {
    CHECK_THROWS_AS(gambler_prob_lb(4, kWorked), std::domain_error);
    CHECK_THROWS_AS(gambler_prob_lb(5, kWorked), std::domain_error);
    CHECK_THROWS_AS(gambler_prob_lb(0, kWorked), std::domain_error);
}

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(validate_configuration(kWorked));
    CHECK_THROWS_AS(validate_configuration(Configuration{4, 2, 4, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate_configuration(Configuration{4, 2, 3, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(validate_configuration(Configuration{5, 2, 4, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(validate_configuration(Configuration{4, 2, 4, 3, 1}), std::invalid_argument);
}

TEST_CASE("enumerate_configs(4) lists exactly the three matchable tuples") {
    auto configs = enumerate_configs(4);
    REQUIRE(configs.size() == 3);
    std::set<std::tuple<int, int, int, int>> seen;
    for (const Configuration& c : configs) {
        CHECK_NOTHROW(validate_configuration(c));
        CHECK(c.k_star != 3); // k* = 3 would need a k^y below 3 that is free
        seen.insert({c.j_y, c.j_star, c.k_y, c.k_star});
    }
    std::set<std::tuple<int, int, int, int>> expected{{1, 2, 3, 4}, {1, 3, 2, 4}, {2, 3, 1, 4}};
    CHECK(seen == expected);
}

TEST_CASE("every enumerated configuration satisfies the invariants") {
    for (int two_n : {6, 10}) {
        auto configs = enumerate_configs(two_n);
        CHECK(!configs.empty());
        for (const Configuration& c : configs) CHECK_NOTHROW(validate_configuration(c));
    }
    CHECK_THROWS_AS(enumerate_configs(5), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_configs(2), std::invalid_argument);
}

TEST_CASE("prefix inequality on the worked configuration") {
    // at i = 4: 2*(1/4 + 3/8 + 1/2) = 9/4 >= 1/2 + 1/2 + 1/2 + 1/2 = 2
    Dyadic gambler_prefix = gambler_prob_lb(1, kWorked) + gambler_prob_lb(2, kWorked) +
                            gambler_prob_lb(3, kWorked);
    CHECK(gambler_prefix == Dyadic(9, 3));
    Dyadic prophet_prefix = Dyadic::zero();
    for (int j = 1; j <= 4; ++j) prophet_prefix += prophet_prob(j, kWorked);
    CHECK(prophet_prefix == Dyadic(2, 0));
    CHECK(2 * gambler_prefix >= prophet_prefix);

    PrefixCheck check = check_prefix_inequality(kWorked);
    CHECK(check.pass);
    CHECK_FALSE(check.first_violation.has_value());
}

TEST_CASE("termwise bound holds with equality at j = 1 when j* >= 3") {
    Configuration c{8, 4, 8, 1, 2};
    // 2*(3j-1)/2^(j+2) = 1/2 = p_1
    CHECK(2 * gambler_prob_lb(1, c) == prophet_prob(1, c));
}

TEST_CASE("the tail pair block is an exact equality") {
    for (const Configuration& c : enumerate_configs(10)) {
        if (c.k_star <= c.j_star + 1) continue;
        BlockChecks blocks = check_block_inequalities(c);
        REQUIRE(blocks.tail_pair.has_value());
        CHECK(*blocks.tail_pair);
        CHECK(blocks.tail_pair_equality);
        CHECK(2 * gambler_prob_lb(c.k_star - 1, c) ==
              prophet_prob(c.k_star, c) + prophet_prob(c.k_star - 1, c));
    }
}

TEST_CASE("the star block absorbs p_k* with equality when k* = j*+1") {
    for (const Configuration& c : enumerate_configs(10)) {
        BlockChecks blocks = check_block_inequalities(c);
        CHECK(blocks.star_block);
        if (c.k_star == c.j_star + 1) {
            CHECK(blocks.star_block_absorbs_tail);
            CHECK(blocks.star_block_equality);
        }
    }
}

TEST_CASE("sweep over small sizes finds no violations") {
    ConfigSweep sweep = check_all_configs(12, 2);
    CHECK(sweep.pass());
    CHECK(sweep.configurations_checked > 0);
    CHECK(sweep.tail_pair_equalities == sweep.tail_pair_checked);
    CHECK(sweep.star_absorbing_equalities == sweep.star_absorbing_checked);
}

TEST_CASE("prophet mass is 2 for every configuration") {
    for (int two_n : {4, 8}) {
        for (const Configuration& c : enumerate_configs(two_n)) {
            CHECK(prophet_mass(c) == Dyadic(2, 0));
        }
    }
}

TEST_CASE("tables depend only on the configuration") {
    // same positions, different values: scaled and shifted instances
    Instance a = make({{4, 3}, {2, 1}});
    Instance b = make({{400, 300}, {200, 100}});
    Configuration ca = configuration_of(ElementTable(a));
    Configuration cb = configuration_of(ElementTable(b));
    CHECK(ca.j_star == cb.j_star);
    CHECK(ca.k_star == cb.k_star);
    CHECK(ca.j_y == cb.j_y);
    CHECK(ca.k_y == cb.k_y);
    for (int j = 1; j <= 4; ++j) CHECK(prophet_prob(j, ca) == prophet_prob(j, cb));
    for (int j = 1; j < 4; ++j) CHECK(gambler_prob_lb(j, ca) == gambler_prob_lb(j, cb));
}

TEST_CASE("oracle probabilities match the tables on random instances") {
    for (std::uint64_t index = 0; index < 60; ++index) {
        int n = 2 + static_cast<int>(index % 7);
        Instance instance = random_instance(n, 2, 777, index);
        InstanceVerification v = verify_instance(instance);
        CHECK(v.prophet_table_equal);
        CHECK(v.gambler_table_bounded);
        CHECK(v.margin_nonnegative);
    }
}

TEST_CASE("configuration_of rejects single-pair tables") {
    CHECK_THROWS_AS(configuration_of(ElementTable(make({{2, 1}}))), std::invalid_argument);
}

TEST_CASE("table entries are probabilities") {
    for (const Configuration& c : enumerate_configs(12)) {
        for (int j = 1; j <= c.two_n; ++j) {
            CHECK(prophet_prob(j, c) >= Dyadic::zero());
            CHECK(prophet_prob(j, c) <= Dyadic::one());
        }
        for (int j = 1; j < c.k_star; ++j) {
            CHECK(gambler_prob_lb(j, c) > Dyadic::zero());
            CHECK(gambler_prob_lb(j, c) <= Dyadic::one());
        }
    }
}

TEST_CASE("prefix inequalities lift to value-weighted sums") {
    // w is non-increasing, so 2*sum q_j w_j >= sum p_j w_j follows from the
    // prefix inequality; checked directly on random instances
    for (std::uint64_t index = 0; index < 40; ++index) {
        int n = 2 + static_cast<int>(index % 6);
        Instance instance = random_instance(n, 2, 1234, index);
        ElementTable table(instance);
        Configuration c = configuration_of(table);
        Rational weighted_q = 0, weighted_p = 0;
        for (int j = 1; j <= table.two_n(); ++j) {
            if (j < c.k_star) weighted_q += gambler_prob_lb(j, c).to_rational() * table.value(j);
            weighted_p += prophet_prob(j, c).to_rational() * table.value(j);
        }
        CHECK(2 * weighted_q >= weighted_p);
        // and the oracle's exact expectations bracket the table sums
        ExactResult exact = enumerate_pairwise(instance);
        CHECK(exact.gambler_expectation >= weighted_q);
        CHECK(exact.prophet_expectation == weighted_p);
    }
}
