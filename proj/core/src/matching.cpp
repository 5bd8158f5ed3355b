#include "optinsure/matching.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace optinsure {

const char* to_string(PairScenario s) {
    switch (s) {
        case PairScenario::EqualStrike: return "equal_strike";
        case PairScenario::PutAbove: return "put_above";
        case PairScenario::CallAbove: return "call_above";
    }
    return "?";
}

PairScenario classify_scenario(Money call_strike, Money put_strike) {
    if (call_strike <= Money{} || put_strike <= Money{})
        throw std::invalid_argument("classify_scenario: strikes must be positive");
    if (call_strike < put_strike) return PairScenario::PutAbove;
    if (call_strike > put_strike) return PairScenario::CallAbove;
    return PairScenario::EqualStrike;
}

CandidatePool CandidatePool::create(std::vector<OptionPosition> positions) {
    CandidatePool pool;
    std::unordered_set<std::string> ids;
    for (auto& pos : positions) {
        pos.validate();
        if (pos.exercised)
            throw std::invalid_argument("CandidatePool: position '" + pos.id + "' is exercised");
        if (!ids.insert(pos.id).second)
            throw std::invalid_argument("CandidatePool: duplicate position id '" + pos.id + "'");
        if (!pool.calls.empty() || !pool.puts.empty()) {
            const OptionPosition& first = pool.calls.empty() ? pool.puts.front() : pool.calls.front();
            if (pos.spec.symbol != first.spec.symbol || pos.spec.expiry != first.spec.expiry)
                throw std::invalid_argument("CandidatePool: mixed symbol or expiry at position '" +
                                            pos.id + "'");
        }
        (pos.spec.kind == OptionKind::Call ? pool.calls : pool.puts).push_back(std::move(pos));
    }
    return pool;
}

MatchPair make_match_pair(OptionPosition call, OptionPosition put) {
    if (call.spec.kind != OptionKind::Call || put.spec.kind != OptionKind::Put)
        throw std::invalid_argument("make_match_pair: wrong option kinds");
    MatchPair pair;
    pair.gap = put.spec.strike - call.spec.strike;
    pair.scenario = classify_scenario(call.spec.strike, put.spec.strike);
    pair.call = std::move(call);
    pair.put = std::move(put);
    return pair;
}

namespace {

// Preference of `who` over candidate counterparties a and b: wider gap
// first, then larger counterparty premium, earlier submission, smaller id.
bool prefers(const OptionPosition& a, const OptionPosition& b, Money gap_a, Money gap_b) {
    if (gap_a != gap_b) return gap_a > gap_b;
    if (a.premium_paid_per_share != b.premium_paid_per_share)
        return a.premium_paid_per_share > b.premium_paid_per_share;
    if (a.open_time != b.open_time) return a.open_time < b.open_time;
    return a.id < b.id;
}

Money signed_gap(const OptionPosition& call, const OptionPosition& put) {
    return put.spec.strike - call.spec.strike;
}

}  // namespace

RankingMatrix build_ranking_matrix(const CandidatePool& pool) {
    if (pool.calls.empty() || pool.puts.empty())
        throw std::invalid_argument("build_ranking_matrix: nothing to match, one side is empty");

    const std::size_t nc = pool.calls.size();
    const std::size_t np = pool.puts.size();
    RankingMatrix m;
    m.i_rank.assign(nc, std::vector<int>(np, 0));
    m.j_rank.assign(nc, std::vector<int>(np, 0));
    m.call_preference.assign(nc, {});

    for (std::size_t c = 0; c < nc; ++c) {
        std::vector<std::size_t> order(np);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return prefers(pool.puts[a], pool.puts[b], signed_gap(pool.calls[c], pool.puts[a]),
                           signed_gap(pool.calls[c], pool.puts[b]));
        });
        for (std::size_t rank = 0; rank < np; ++rank) m.i_rank[c][order[rank]] = static_cast<int>(rank + 1);
        m.call_preference[c] = std::move(order);
    }

    for (std::size_t p = 0; p < np; ++p) {
        std::vector<std::size_t> order(nc);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return prefers(pool.calls[a], pool.calls[b], signed_gap(pool.calls[a], pool.puts[p]),
                           signed_gap(pool.calls[b], pool.puts[p]));
        });
        for (std::size_t rank = 0; rank < nc; ++rank) m.j_rank[order[rank]][p] = static_cast<int>(rank + 1);
    }
    return m;
}

MatchingOutcome deferred_acceptance(const CandidatePool& pool, const RankingMatrix& matrix) {
    const std::size_t nc = pool.calls.size();
    const std::size_t np = pool.puts.size();
    if (matrix.i_rank.size() != nc || (nc > 0 && matrix.i_rank[0].size() != np))
        throw std::invalid_argument("deferred_acceptance: matrix does not fit the pool");

    constexpr std::size_t kFree = static_cast<std::size_t>(-1);
    std::vector<std::size_t> next_choice(nc, 0);      // index into call_preference[c]
    std::vector<std::size_t> engaged_call(np, kFree); // per put
    std::vector<std::size_t> engaged_put(nc, kFree);  // per call
    MatchingOutcome out;

    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (std::size_t c = 0; c < nc; ++c) {
            if (engaged_put[c] != kFree || next_choice[c] >= np) continue;
            const std::size_t p = matrix.call_preference[c][next_choice[c]++];
            ++out.proposals_made;
            progressed = true;
            const std::size_t incumbent = engaged_call[p];
            if (incumbent == kFree) {
                engaged_call[p] = c;
                engaged_put[c] = p;
            } else if (matrix.j_rank[c][p] < matrix.j_rank[incumbent][p]) {
                engaged_put[incumbent] = kFree;
                engaged_call[p] = c;
                engaged_put[c] = p;
            }
        }
    }

    for (std::size_t c = 0; c < nc; ++c) {
        if (engaged_put[c] == kFree)
            out.unmatched_calls.push_back(pool.calls[c]);
        else
            out.pairs.push_back(make_match_pair(pool.calls[c], pool.puts[engaged_put[c]]));
    }
    for (std::size_t p = 0; p < np; ++p)
        if (engaged_call[p] == kFree) out.unmatched_puts.push_back(pool.puts[p]);
    return out;
}

}  // namespace optinsure
