#pragma once
/**
 * @file matching.hpp
 * @brief Strike-gap ranking matrix and the acceptance-and-rejection
 *        (deferred acceptance) allocation of call and put investors.
 *
 * Preference on both sides of the market is the signed strike gap
 * K_put - K_call, descending: a wide positive gap is the configuration the
 * insurer wants, a wide negative gap the one it wants least. Ties break by
 * larger counterparty premium, then earlier submission, then position id,
 * so matching is a deterministic function of the pool.
 */

#include "optinsure/instruments.hpp"
#include "optinsure/money.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace optinsure {

enum class PairScenario { EqualStrike, PutAbove, CallAbove };

const char* to_string(PairScenario s);

/// EqualStrike when the strikes coincide, PutAbove when the put strike is
/// higher (favorable), CallAbove when the call strike is higher (adverse).
PairScenario classify_scenario(Money call_strike, Money put_strike);

/// One side's batch of insurable long positions, uniform in symbol and
/// expiry. Construction validates the pool invariants.
struct CandidatePool {
    std::vector<OptionPosition> calls;
    std::vector<OptionPosition> puts;

    /// Splits a mixed batch into calls/puts and checks: one symbol, one
    /// expiry, no duplicate ids, every position long and unexercised.
    static CandidatePool create(std::vector<OptionPosition> positions);
};

/// Mutual preference ranks between every call row and put column.
/// i_rank[c][p] is the rank (1 = best) of put p within call c's row;
/// j_rank[c][p] the rank of call c within put p's column.
struct RankingMatrix {
    std::vector<std::vector<int>> i_rank;
    std::vector<std::vector<int>> j_rank;
    /// call_preference[c] lists put indices in c's rank order (index 0 is rank 1).
    std::vector<std::vector<std::size_t>> call_preference;
};

/// Requires a non-empty pool on both sides.
RankingMatrix build_ranking_matrix(const CandidatePool& pool);

/// An allocated call/put couple.
struct MatchPair {
    OptionPosition call;
    OptionPosition put;
    Money gap;  // put strike - call strike
    PairScenario scenario = PairScenario::EqualStrike;

    std::string id() const { return call.id + ":" + put.id; }
    std::int64_t covered_shares() const { return call.shares < put.shares ? call.shares : put.shares; }
};

MatchPair make_match_pair(OptionPosition call, OptionPosition put);

struct MatchingOutcome {
    std::vector<MatchPair> pairs;
    std::vector<OptionPosition> unmatched_calls;
    std::vector<OptionPosition> unmatched_puts;
    std::int64_t proposals_made = 0;  // bounded by |calls| * |puts|
};

/// Round-based acceptance-and-rejection with calls proposing: every
/// unassigned call proposes to its best not-yet-tried put; each put keeps
/// the best j-ranked proposer seen so far. The smaller side always ends
/// fully matched; the rest is returned as the waiting-list residue.
MatchingOutcome deferred_acceptance(const CandidatePool& pool, const RankingMatrix& matrix);

}  // namespace optinsure
