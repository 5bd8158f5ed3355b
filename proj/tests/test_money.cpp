#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "optinsure/money.hpp"

#include <random>

using namespace optinsure;
using testutil::M;
using testutil::R;

TEST_CASE("paper amounts encode losslessly") {
    CHECK(M("742.5").units() == 7'425'000);
    CHECK(M("0.025").units() == 250);
    CHECK(M("2.3475").units() == 23'475);
    CHECK(M("-1.188").units() == -11'880);
    CHECK(M("12").units() == 120'000);
}

TEST_CASE("minimal decimal rendering") {
    CHECK(M("742.5").to_string() == "742.5");
    CHECK(M("12").to_string() == "12");
    CHECK(M("2.3475").to_string() == "2.3475");
    CHECK(M("0.025").to_string() == "0.025");
    CHECK(M("-0.0001").to_string() == "-0.0001");
    CHECK(Money{}.to_string() == "0");
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(Money::from_string("1.23456"), std::invalid_argument);
    CHECK_THROWS_AS(Money::from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Money::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(Money::from_string("1.2.3"), std::invalid_argument);
    // Trailing zeros beyond the grid are harmless.
    CHECK(Money::from_string("1.23450000") == M("1.2345"));
    CHECK(Money::from_string("+7.5") == M("7.5"));
}

TEST_CASE("round-trip through text is the identity") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(-100'000'000, 100'000'000);
    for (int i = 0; i < 2000; ++i) {
        Money m = Money::from_units(dist(rng));
        CHECK(Money::from_string(m.to_string()) == m);
    }
}

TEST_CASE("times rounds half-up at the 1e-4 digit") {
    // 1.2 * 0.99 = 1.188 exactly
    CHECK(M("1.2").times(R("0.99")) == M("1.188"));
    // 7.5 * 0.99 = 7.425 exactly
    CHECK(M("7.5").times(R("0.99")) == M("7.425"));
    // one unit * 0.5 = half a unit, rounds up
    CHECK(Money::from_units(1).times(R("0.5")) == Money::from_units(1));
    // three units * 0.5 = 1.5 units, rounds up to 2
    CHECK(Money::from_units(3).times(R("0.5")) == Money::from_units(2));
    // ties away from zero on the negative side
    CHECK(Money::from_units(-3).times(R("0.5")) == Money::from_units(-2));
    // below the half never rounds up
    CHECK(Money::from_units(1).times(R("0.4999")) == Money::from_units(0));
}

TEST_CASE("scaled_by and divided_by") {
    CHECK(M("7.425").scaled_by(100) == M("742.5"));
    CHECK(M("234.75").divided_by(100) == M("2.3475"));
    CHECK(M("1").divided_by(3) == M("0.3333"));
    CHECK(M("2").divided_by(3) == M("0.6667"));
}

TEST_CASE("rate parsing and complement") {
    CHECK(R("0.5").ppm() == 500'000);
    CHECK(R("0.01").complement() == R("0.99"));
    CHECK(R("0.02").to_string() == "0.02");
    CHECK_THROWS_AS(Rate::from_string("0.1234567"), std::invalid_argument);
}

TEST_CASE("exact arithmetic is associative over shuffles") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(-1'000'000, 1'000'000);
    std::vector<Money> values;
    Money forward;
    for (int i = 0; i < 500; ++i) {
        values.push_back(Money::from_units(dist(rng)));
        forward += values.back();
    }
    std::shuffle(values.begin(), values.end(), rng);
    Money shuffled;
    for (Money v : values) shuffled += v;
    CHECK(forward == shuffled);
}
