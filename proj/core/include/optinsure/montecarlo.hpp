#pragma once
/**
 * @file montecarlo.hpp
 * @brief GBM spot paths and the insurer's risk profile across terminal
 *        spots, per pair scenario class.
 *
 * Each path draws from its own deterministic substream derived from
 * (seed, path index), so any subset of paths reproduces identically and
 * summaries do not depend on evaluation order.
 */

#include "optinsure/matching.hpp"
#include "optinsure/money.hpp"
#include "optinsure/terms.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace optinsure {

struct PathParams {
    Money s0;
    double drift = 0.0;       // annualized
    double volatility = 0.0;  // annualized
    int horizon_days = 0;
    int steps = 1;
    int path_count = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Log-Euler GBM sampling, exact in distribution. Row p holds path p with
/// steps+1 points starting at S0. Zero volatility yields the deterministic
/// drift curve.
std::vector<std::vector<double>> gbm_paths(const PathParams& params);

/// Terminal spots only (cheaper when the path interior is not needed).
std::vector<double> gbm_terminal_spots(const PathParams& params);

/// What one issued pair does to the insurer's book at a terminal spot:
/// fixed premium income at issuance, and per-side net reimbursements paid
/// when that side's option lands strictly out of the money.
struct PairEconomics {
    PairScenario scenario = PairScenario::EqualStrike;
    Money call_strike;
    Money put_strike;
    Money collected_total;        // both premium halves, scaled by covered shares
    Money call_net_reimb_total;   // paid iff spot < call strike
    Money put_net_reimb_total;    // paid iff spot > put strike
};

PairEconomics pair_economics(const MatchPair& pair, const InsuranceTerms& terms);

/// Insurer P&L on one pair for a given terminal spot.
Money pair_pnl_at(const PairEconomics& econ, Money terminal_spot);

struct PnlStats {
    Money minimum;
    Money maximum;
    Money mean;
    std::int64_t samples = 0;
};

struct HistogramBin {
    Money lo;
    Money hi;
    std::int64_t count = 0;
};

struct ClassProfile {
    PairScenario scenario = PairScenario::EqualStrike;
    std::int64_t pair_count = 0;
    PnlStats stats;
    std::vector<HistogramBin> histogram;
};

struct RiskProfile {
    PnlStats overall;
    std::vector<ClassProfile> per_class;     // classes present, matrix order
    std::vector<Money> path_pnl;             // overall insurer P&L per path
    std::vector<std::array<Money, 3>> path_pnl_by_class;  // EqualStrike, PutAbove, CallAbove
};

/// Evaluates the insurer's P&L over every sampled terminal spot.
RiskProfile insurer_risk_profile(const std::vector<PairEconomics>& pairs,
                                 const PathParams& params, int histogram_bins = 20);

/// CSV: summary rows then histogram rows.
void write_risk_profile_csv(std::ostream& os, const RiskProfile& profile);
/// Plot-ready series: path index, overall P&L, per-class P&L.
void write_risk_series_csv(std::ostream& os, const RiskProfile& profile);

/// SplitMix64; also the per-path substream seeding function.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t path_subseed(std::uint64_t seed, std::uint64_t path_index);

}  // namespace optinsure
