#include "optinsure/verification.hpp"

#include <algorithm>
#include <stdexcept>

namespace optinsure {

Money pair_premium_r(Money call_premium, Money put_premium, Rate yardstick) {
    if (call_premium.is_negative() || put_premium.is_negative())
        throw std::invalid_argument("pair_premium_r: negative premium");
    if (yardstick.ppm() <= 0 || yardstick.ppm() >= Rate::kScale)
        throw std::invalid_argument("pair_premium_r: yardstick outside (0, 1)");
    return max(call_premium, put_premium).times(yardstick);
}

Money pair_exposure_l(Money call_premium, Money put_premium, Rate yardstick, Rate service_charge) {
    if (service_charge.ppm() < 0 || service_charge.ppm() >= Rate::kScale)
        throw std::invalid_argument("pair_exposure_l: service charge outside [0, 1)");
    return pair_premium_r(call_premium, put_premium, yardstick).times(service_charge.complement());
}

WeightedMatch make_weighted(const MatchPair& pair, const InsuranceTerms& terms) {
    WeightedMatch w{pair, Money{}, Money{}};
    const Money call_premium = pair.call.premium_paid_per_share;
    const Money put_premium = pair.put.premium_paid_per_share;
    const std::int64_t covered = pair.covered_shares();
    if (pair.scenario == PairScenario::CallAbove)
        w.exposure_l =
            pair_exposure_l(call_premium, put_premium, terms.yardstick, terms.service_charge)
                .scaled_by(covered);
    else
        w.collected_premium_r =
            pair_premium_r(call_premium, put_premium, terms.yardstick).scaled_by(covered);
    return w;
}

WeightageResult weightage(const std::vector<WeightedMatch>& pairs) {
    Money d;
    for (const auto& wm : pairs) d = max(d, abs(wm.pair.gap));
    if (d.is_zero()) return {Money{}, Money{}, true};

    __int128 numerator = 0;  // units^2; gap * R for favorable, gap * L for adverse
    for (const auto& wm : pairs) {
        const Money value = wm.pair.scenario == PairScenario::CallAbove ? wm.exposure_l
                                                                        : wm.collected_premium_r;
        numerator += static_cast<__int128>(wm.pair.gap.units()) * value.units();
    }
    return {Money::from_units(round_div_half_up(numerator, d.units())), d, false};
}

namespace {

// Rejection order: widest |gap| first, then larger L, then pair id.
bool reject_before(const WeightedMatch& a, const WeightedMatch& b) {
    if (abs(a.pair.gap) != abs(b.pair.gap)) return abs(a.pair.gap) > abs(b.pair.gap);
    if (a.exposure_l != b.exposure_l) return a.exposure_l > b.exposure_l;
    return a.pair.id() < b.pair.id();
}

}  // namespace

VerificationResult verify_and_modify(std::vector<MatchPair> pairs, const InsuranceTerms& terms) {
    terms.validate();
    std::vector<WeightedMatch> live;
    live.reserve(pairs.size());
    for (const auto& p : pairs) live.push_back(make_weighted(p, terms));

    VerificationResult result;
    for (;;) {
        WeightageResult w = weightage(live);
        ++result.iterations;
        VerificationIteration iter{w.w, w.d, w.degenerate, std::nullopt};

        if (!w.degenerate && w.w > Money{}) {
            result.trace.push_back(iter);
            result.w = w.w;
            result.d = w.d;
            break;
        }

        auto worst = live.end();
        for (auto it = live.begin(); it != live.end(); ++it)
            if (it->pair.scenario == PairScenario::CallAbove &&
                (worst == live.end() || reject_before(*it, *worst)))
                worst = it;

        if (worst == live.end()) {
            // Nothing adverse left to reject; accept what remains, flagged.
            result.trace.push_back(iter);
            result.w = w.w;
            result.d = w.d;
            result.degenerate = true;
            break;
        }

        iter.rejected_pair = worst->pair.id();
        result.trace.push_back(iter);
        result.rejected.push_back(worst->pair);
        live.erase(worst);
    }

    result.accepted.reserve(live.size());
    for (auto& wm : live) result.accepted.push_back(std::move(wm.pair));
    return result;
}

}  // namespace optinsure
