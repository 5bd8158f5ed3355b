#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "optinsure/montecarlo.hpp"

#include <cmath>

using namespace optinsure;
using testutil::M;

namespace {

PathParams base_params() {
    PathParams p;
    p.s0 = Money::from_major(50);
    p.drift = 0.01;
    p.volatility = 0.4;
    p.horizon_days = 180;
    p.steps = 30;
    p.path_count = 1000;
    p.seed = 42;
    return p;
}

MatchPair pair_of(int call_strike, int put_strike, const char* call_premium,
                  const char* put_premium, std::string tag) {
    return make_match_pair(
        testutil::call_pos("c" + tag, Money::from_major(call_strike), 100, M(call_premium)),
        testutil::put_pos("p" + tag, Money::from_major(put_strike), 100, M(put_premium)));
}

}  // namespace

TEST_CASE("zero volatility is the deterministic drift curve") {
    PathParams p = base_params();
    p.volatility = 0.0;
    p.path_count = 3;
    const auto paths = gbm_paths(p);
    const double t = p.horizon_days / 365.0;
    for (const auto& path : paths) {
        CHECK(path.front() == 50.0);
        CHECK(path.back() == 50.0 * std::exp(p.drift * t));
    }
}

TEST_CASE("fixed seed reproduces the exact matrix") {
    const auto a = gbm_paths(base_params());
    const auto b = gbm_paths(base_params());
    CHECK(a == b);
}

TEST_CASE("any subset of paths reproduces identically") {
    PathParams p = base_params();
    p.path_count = 200;
    const auto big = gbm_paths(p);
    p.path_count = 50;
    const auto small = gbm_paths(p);
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == big[i]);
}

TEST_CASE("terminal mean converges to the closed-form moment") {
    PathParams p = base_params();
    p.steps = 1;
    p.path_count = 100'000;
    const double t = p.horizon_days / 365.0;
    const auto terminals = gbm_terminal_spots(p);

    double mean = 0;
    for (double s : terminals) mean += s;
    mean /= static_cast<double>(terminals.size());

    const double expected = 50.0 * std::exp(p.drift * t);
    const double variance = expected * expected * (std::exp(p.volatility * p.volatility * t) - 1.0);
    const double standard_error = std::sqrt(variance / static_cast<double>(terminals.size()));
    CHECK(std::abs(mean - expected) < 3.0 * standard_error);
}

TEST_CASE("pair economics mirror issuance and settlement arithmetic") {
    const InsuranceTerms terms;
    const PairEconomics econ = pair_economics(pair_of(500, 500, "24", "15", "x"), terms);
    CHECK(econ.collected_total == Money::from_major(1'200));
    CHECK(econ.call_net_reimb_total == Money::from_major(1'188));
    CHECK(econ.put_net_reimb_total == M("742.5"));

    CHECK(pair_pnl_at(econ, Money::from_major(500)) == Money::from_major(1'200));
    CHECK(pair_pnl_at(econ, Money::from_major(555)) == M("457.5"));
    CHECK(pair_pnl_at(econ, Money::from_major(455)) == Money::from_major(12));
}

TEST_CASE("equal-strike pool keeps the insurer above zero on every path") {
    const InsuranceTerms terms;
    std::vector<PairEconomics> pairs{
        pair_economics(pair_of(50, 50, "5.4", "5.4", "a"), terms),
        pair_economics(pair_of(45, 45, "7.9", "3.1", "b"), terms),
    };
    PathParams p = base_params();
    p.path_count = 10'000;
    p.steps = 1;
    const RiskProfile profile = insurer_risk_profile(pairs, p);
    CHECK(profile.overall.minimum > Money{});
    CHECK(profile.overall.samples == 10'000);
}

TEST_CASE("put-above pool floors above zero and tops out in the inner band") {
    const InsuranceTerms terms;
    std::vector<PairEconomics> pairs{pair_economics(pair_of(40, 60, "11.7", "16.2", "a"), terms)};
    PathParams p = base_params();
    p.path_count = 10'000;
    p.steps = 1;
    const RiskProfile profile = insurer_risk_profile(pairs, p);
    CHECK(profile.overall.minimum > Money{});
    // Paths landing between the strikes leave the whole premium intact.
    CHECK(profile.overall.maximum == pairs[0].collected_total);
}

TEST_CASE("adverse pair loses on every spot strictly between the strikes") {
    const InsuranceTerms terms;
    const PairEconomics econ = pair_economics(pair_of(60, 40, "2.4", "1.5", "a"), terms);
    for (std::int64_t u = Money::from_major(40).units() + 1; u < Money::from_major(60).units();
         u += 100) {
        CHECK(pair_pnl_at(econ, Money::from_units(u)) < Money{});
    }
}

TEST_CASE("profile separates the scenario classes") {
    const InsuranceTerms terms;
    std::vector<PairEconomics> pairs{
        pair_economics(pair_of(50, 50, "5.4", "5.4", "a"), terms),
        pair_economics(pair_of(40, 60, "11.7", "16.2", "b"), terms),
        pair_economics(pair_of(60, 40, "2.4", "1.5", "c"), terms),
    };
    PathParams p = base_params();
    p.path_count = 500;
    const RiskProfile profile = insurer_risk_profile(pairs, p);
    REQUIRE(profile.per_class.size() == 3);
    for (const auto& cp : profile.per_class) {
        CHECK(cp.pair_count == 1);
        CHECK(cp.stats.samples == 500);
        if (cp.scenario != PairScenario::CallAbove) CHECK(cp.stats.minimum > Money{});
    }
    // Overall is the per-class sum path by path.
    for (std::size_t i = 0; i < profile.path_pnl.size(); ++i) {
        const auto& row = profile.path_pnl_by_class[i];
        CHECK(profile.path_pnl[i] == row[0] + row[1] + row[2]);
    }
}

TEST_CASE("summaries are order-independent in fixed point") {
    const InsuranceTerms terms;
    std::vector<PairEconomics> pairs{pair_economics(pair_of(48, 52, "6.2", "5.9", "a"), terms)};
    PathParams p = base_params();
    p.path_count = 2'000;
    const RiskProfile profile = insurer_risk_profile(pairs, p);

    // Recompute the mean from the series in reverse order.
    __int128 acc = 0;
    for (auto it = profile.path_pnl.rbegin(); it != profile.path_pnl.rend(); ++it)
        acc += it->units();
    CHECK(Money::from_units(round_div_half_up(acc, static_cast<std::int64_t>(
                                                       profile.path_pnl.size()))) ==
          profile.overall.mean);
}

TEST_CASE("parameter validation") {
    PathParams p = base_params();
    p.steps = 0;
    CHECK_THROWS_AS(gbm_paths(p), std::invalid_argument);
    p = base_params();
    p.path_count = 0;
    CHECK_THROWS_AS(gbm_paths(p), std::invalid_argument);
    p = base_params();
    p.s0 = Money{};
    CHECK_THROWS_AS(gbm_paths(p), std::invalid_argument);
    p = base_params();
    p.volatility = -1.0;
    CHECK_THROWS_AS(gbm_paths(p), std::invalid_argument);
}
