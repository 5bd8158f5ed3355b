#pragma once
/**
 * @file verification.hpp
 * @brief Weighting of a matching list and the greedy
 *        verification-and-modification loop.
 *
 * A matching list is acceptable when its weightage W is positive:
 *
 *     W = (1/D) * [ sum over favorable pairs of gap_m * R_m
 *                 + sum over adverse pairs of gap_n * L_n ]
 *
 * where gap = K_put - K_call (negative for adverse pairs), R is the
 * premium a favorable pair collects, L the loss figure of an adverse
 * pair, and D normalizes by the largest absolute gap present. While
 * W <= 0, the adverse pair with the widest gap is rejected and the list
 * is re-evaluated over the remaining pairs (D included).
 */

#include "optinsure/matching.hpp"
#include "optinsure/money.hpp"
#include "optinsure/terms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace optinsure {

/// A match pair annotated with the money figures entering the weighting.
/// R is populated only for EqualStrike/PutAbove pairs, L only for
/// CallAbove pairs; both are per-share figures scaled by covered shares.
struct WeightedMatch {
    MatchPair pair;
    Money collected_premium_r;
    Money exposure_l;
};

/// Premium a pair yields per share: yardstick * max(call, put premium),
/// rounded half-up at 1e-4.
Money pair_premium_r(Money call_premium, Money put_premium, Rate yardstick);

/// Loss figure of an adverse pair per share:
/// yardstick * max(call, put premium) * (1 - service charge), with the
/// same two-stage rounding the settlement pipeline applies.
Money pair_exposure_l(Money call_premium, Money put_premium, Rate yardstick, Rate service_charge);

/// Annotates a pair with R or L according to its scenario, scaled by
/// min(call shares, put shares).
WeightedMatch make_weighted(const MatchPair& pair, const InsuranceTerms& terms);

struct WeightageResult {
    Money w;
    Money d;
    bool degenerate = false;  // all gaps zero or empty input; W reported as 0
};

/// Evaluates the weighting equation over the given pairs. Exact integer
/// arithmetic; the single division by D rounds half-up at 1e-4.
WeightageResult weightage(const std::vector<WeightedMatch>& pairs);

struct VerificationIteration {
    Money w;
    Money d;
    bool degenerate = false;
    std::optional<std::string> rejected_pair;  // set when this round rejected one
};

struct VerificationResult {
    Money w;  // weightage of the accepted list
    Money d;
    bool degenerate = false;
    std::vector<MatchPair> accepted;
    std::vector<MatchPair> rejected;  // routed back to the waiting list
    int iterations = 0;               // weightage evaluations, >= 1
    std::vector<VerificationIteration> trace;
};

/// Runs the verification-and-modification loop: evaluate W, and while
/// W <= 0 reject the CallAbove pair with the largest |gap| (ties: larger
/// L, then pair id) and re-evaluate. When no CallAbove pair remains and W
/// is still not positive the list is accepted with the degenerate flag.
VerificationResult verify_and_modify(std::vector<MatchPair> pairs, const InsuranceTerms& terms);

}  // namespace optinsure
