#include "sspi/dyadic.hpp"
#include "sspi/rng.hpp"

#include <doctest.h>

using namespace sspi;

TEST_CASE("dyadic equality compares values, not representations") {
    CHECK(Dyadic(2, 2) == Dyadic(1, 1));
    CHECK(Dyadic(0, 5) == Dyadic::zero());
    CHECK(Dyadic(3, 3) != Dyadic(3, 4));
    CHECK(Dyadic(1, 1) < Dyadic(3, 2));
    CHECK(Dyadic(3, 2) < Dyadic::one());
}

TEST_CASE("dyadic arithmetic is exact") {
    CHECK(Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2));
    CHECK(2 * Dyadic(3, 3) == Dyadic(3, 2));
    CHECK((Dyadic(1, 60) + Dyadic(1, 60)).to_rational() == Rational(BigInt(1), BigInt(1) << 59));
}

TEST_CASE("dyadic against rational arithmetic on random operands") {
    CounterRng rng(99, 0);
    for (int i = 0; i < 500; ++i) {
        Dyadic a(BigInt(rng.next_below(1 << 20)), static_cast<int>(rng.next_below(24)));
        Dyadic b(BigInt(rng.next_below(1 << 20)), static_cast<int>(rng.next_below(24)));
        CHECK((a + b).to_rational() == a.to_rational() + b.to_rational());
        CHECK((a < b) == (a.to_rational() < b.to_rational()));
        CHECK((a == b) == (a.to_rational() == b.to_rational()));
    }
}

TEST_CASE("summing 2^n assignment weights gives exactly one") {
    for (int n : {1, 4, 11}) {
        Dyadic total = Dyadic::zero();
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) total += Dyadic(1, n);
        CHECK(total == Dyadic::one());
    }
}

TEST_CASE("dyadic string round trip") {
    Dyadic d(13, 6);
    CHECK(d.str() == "13/2^6");
    CHECK(parse_dyadic(d.str()) == d);
    CHECK_THROWS_AS(parse_dyadic("13/6"), std::invalid_argument);
}

TEST_CASE("negative numerators and denominators are rejected") {
    CHECK_THROWS_AS(Dyadic(BigInt(-1), 2), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic(BigInt(1), -2), std::invalid_argument);
}
