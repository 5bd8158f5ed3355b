#include "optinsure/montecarlo.hpp"

#include "optinsure/contracts.hpp"
#include "optinsure/verification.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace optinsure {

void PathParams::validate() const {
    if (s0 <= Money{}) throw std::invalid_argument("PathParams: s0 must be positive");
    if (horizon_days < 0) throw std::invalid_argument("PathParams: negative horizon");
    if (steps < 1) throw std::invalid_argument("PathParams: steps must be >= 1");
    if (path_count < 1) throw std::invalid_argument("PathParams: path_count must be >= 1");
    if (volatility < 0.0) throw std::invalid_argument("PathParams: negative volatility");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t path_subseed(std::uint64_t seed, std::uint64_t path_index) {
    return splitmix64(seed ^ splitmix64(path_index + 1));
}

namespace {

// Uniform in (0, 1): 53 bits of the generator output, offset half a ulp so
// log() never sees zero.
double uniform_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller, one normal per two uniforms; dependable across library
// implementations, unlike std::normal_distribution.
double standard_normal(std::mt19937_64& rng) {
    const double u1 = uniform_open(rng);
    const double u2 = uniform_open(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<double> sample_path(const PathParams& p, std::uint64_t path_index) {
    const double s0 = p.s0.to_double();
    const double horizon = p.horizon_days / 365.0;
    std::vector<double> path(static_cast<std::size_t>(p.steps) + 1);
    path[0] = s0;
    if (p.volatility == 0.0) {
        for (int k = 1; k <= p.steps; ++k) {
            const double t = k == p.steps ? horizon : horizon * k / p.steps;
            path[static_cast<std::size_t>(k)] = s0 * std::exp(p.drift * t);
        }
        return path;
    }
    std::mt19937_64 rng(path_subseed(p.seed, path_index));
    const double dt = horizon / p.steps;
    const double drift_term = (p.drift - 0.5 * p.volatility * p.volatility) * dt;
    const double vol_term = p.volatility * std::sqrt(dt);
    double log_s = std::log(s0);
    for (int k = 1; k <= p.steps; ++k) {
        log_s += drift_term + vol_term * standard_normal(rng);
        path[static_cast<std::size_t>(k)] = std::exp(log_s);
    }
    return path;
}

}  // namespace

std::vector<std::vector<double>> gbm_paths(const PathParams& params) {
    params.validate();
    std::vector<std::vector<double>> paths(static_cast<std::size_t>(params.path_count));
    for (int i = 0; i < params.path_count; ++i)
        paths[static_cast<std::size_t>(i)] = sample_path(params, static_cast<std::uint64_t>(i));
    return paths;
}

std::vector<double> gbm_terminal_spots(const PathParams& params) {
    params.validate();
    std::vector<double> terminals(static_cast<std::size_t>(params.path_count));
    for (int i = 0; i < params.path_count; ++i)
        terminals[static_cast<std::size_t>(i)] =
            sample_path(params, static_cast<std::uint64_t>(i)).back();
    return terminals;
}

PairEconomics pair_economics(const MatchPair& pair, const InsuranceTerms& terms) {
    PairEconomics econ;
    econ.scenario = pair.scenario;
    econ.call_strike = pair.call.spec.strike;
    econ.put_strike = pair.put.spec.strike;
    const std::int64_t covered = pair.covered_shares();
    const PremiumSplit split = compute_premium_split(pair.call.premium_paid_per_share,
                                                     pair.put.premium_paid_per_share, terms);
    econ.collected_total = split.total.scaled_by(covered);
    econ.call_net_reimb_total =
        net_reimbursement_per_share(pair.call.premium_paid_per_share.times(terms.yardstick),
                                    terms.service_charge)
            .scaled_by(covered);
    econ.put_net_reimb_total =
        net_reimbursement_per_share(pair.put.premium_paid_per_share.times(terms.yardstick),
                                    terms.service_charge)
            .scaled_by(covered);
    return econ;
}

Money pair_pnl_at(const PairEconomics& econ, Money terminal_spot) {
    Money pnl = econ.collected_total;
    if (terminal_spot < econ.call_strike) pnl -= econ.call_net_reimb_total;  // call expired OTM
    if (terminal_spot > econ.put_strike) pnl -= econ.put_net_reimb_total;   // put expired OTM
    return pnl;
}

namespace {

std::size_t class_index(PairScenario s) {
    switch (s) {
        case PairScenario::EqualStrike: return 0;
        case PairScenario::PutAbove: return 1;
        case PairScenario::CallAbove: return 2;
    }
    return 0;
}

PnlStats stats_over(const std::vector<Money>& samples) {
    PnlStats st;
    st.samples = static_cast<std::int64_t>(samples.size());
    if (samples.empty()) return st;
    st.minimum = samples.front();
    st.maximum = samples.front();
    __int128 acc = 0;
    for (Money v : samples) {
        st.minimum = min(st.minimum, v);
        st.maximum = max(st.maximum, v);
        acc += v.units();
    }
    st.mean = Money::from_units(round_div_half_up(acc, st.samples));
    return st;
}

std::vector<HistogramBin> histogram_over(const std::vector<Money>& samples, int bins) {
    std::vector<HistogramBin> hist;
    if (samples.empty() || bins < 1) return hist;
    Money lo = samples.front(), hi = samples.front();
    for (Money v : samples) {
        lo = min(lo, v);
        hi = max(hi, v);
    }
    if (lo == hi) {
        hist.push_back({lo, hi, static_cast<std::int64_t>(samples.size())});
        return hist;
    }
    const std::int64_t span = hi.units() - lo.units();
    hist.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        hist[static_cast<std::size_t>(b)].lo =
            Money::from_units(lo.units() + span * b / bins);
        hist[static_cast<std::size_t>(b)].hi =
            Money::from_units(b + 1 == bins ? hi.units() : lo.units() + span * (b + 1) / bins);
    }
    for (Money v : samples) {
        auto b = static_cast<std::size_t>(
            static_cast<__int128>(v.units() - lo.units()) * bins / (span + 1));
        ++hist[b].count;
    }
    return hist;
}

}  // namespace

RiskProfile insurer_risk_profile(const std::vector<PairEconomics>& pairs,
                                 const PathParams& params, int histogram_bins) {
    const std::vector<double> terminals = gbm_terminal_spots(params);

    RiskProfile profile;
    profile.path_pnl.reserve(terminals.size());
    profile.path_pnl_by_class.reserve(terminals.size());

    for (double terminal : terminals) {
        const Money spot = Money::from_double_rounded(terminal);
        std::array<Money, 3> by_class{};
        for (const auto& econ : pairs) by_class[class_index(econ.scenario)] += pair_pnl_at(econ, spot);
        profile.path_pnl.push_back(by_class[0] + by_class[1] + by_class[2]);
        profile.path_pnl_by_class.push_back(by_class);
    }

    profile.overall = stats_over(profile.path_pnl);

    for (PairScenario scenario :
         {PairScenario::EqualStrike, PairScenario::PutAbove, PairScenario::CallAbove}) {
        std::int64_t count = 0;
        for (const auto& econ : pairs)
            if (econ.scenario == scenario) ++count;
        if (count == 0) continue;
        std::vector<Money> samples;
        samples.reserve(profile.path_pnl_by_class.size());
        for (const auto& row : profile.path_pnl_by_class)
            samples.push_back(row[class_index(scenario)]);
        ClassProfile cp;
        cp.scenario = scenario;
        cp.pair_count = count;
        cp.stats = stats_over(samples);
        cp.histogram = histogram_over(samples, histogram_bins);
        profile.per_class.push_back(std::move(cp));
    }
    return profile;
}

void write_risk_profile_csv(std::ostream& os, const RiskProfile& profile) {
    os << "section,class,pairs,paths,min,mean,max\n";
    os << "summary,all,," << profile.overall.samples << ',' << profile.overall.minimum.to_string()
       << ',' << profile.overall.mean.to_string() << ',' << profile.overall.maximum.to_string()
       << '\n';
    for (const auto& cp : profile.per_class)
        os << "summary," << to_string(cp.scenario) << ',' << cp.pair_count << ','
           << cp.stats.samples << ',' << cp.stats.minimum.to_string() << ','
           << cp.stats.mean.to_string() << ',' << cp.stats.maximum.to_string() << '\n';
    os << "section,class,bin_lo,bin_hi,count\n";
    for (const auto& cp : profile.per_class)
        for (const auto& bin : cp.histogram)
            os << "histogram," << to_string(cp.scenario) << ',' << bin.lo.to_string() << ','
               << bin.hi.to_string() << ',' << bin.count << '\n';
}

void write_risk_series_csv(std::ostream& os, const RiskProfile& profile) {
    os << "path,pnl,equal_strike,put_above,call_above\n";
    for (std::size_t i = 0; i < profile.path_pnl.size(); ++i) {
        const auto& row = profile.path_pnl_by_class[i];
        os << i << ',' << profile.path_pnl[i].to_string() << ',' << row[0].to_string() << ','
           << row[1].to_string() << ',' << row[2].to_string() << '\n';
    }
}

}  // namespace optinsure
