#pragma once
/**
 * @file engine.hpp
 * @brief Serialized command stream over the registry, contract store and
 *        ledger, with an append-only JSONL event log.
 *
 * Every mutation goes through one engine command; each command appends one
 * log line. Replaying a log through Engine::replay reconstructs the exact
 * state, so the log is the persistence format.
 */

#include "optinsure/contracts.hpp"
#include "optinsure/ledger.hpp"
#include "optinsure/market.hpp"
#include "optinsure/matching.hpp"
#include "optinsure/terms.hpp"
#include "optinsure/verification.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace optinsure {

/// Matching run over one (symbol, expiry) pool of the waiting list.
struct PoolMatchReport {
    std::string symbol;
    Date expiry;
    std::vector<std::string> call_ids;  // row order of the matrix
    std::vector<std::string> put_ids;   // column order
    RankingMatrix matrix;
    MatchingOutcome outcome;
    VerificationResult verification;
    std::vector<std::string> proposal_ids;  // one per accepted pair
};

struct MatchingReport {
    std::vector<PoolMatchReport> pools;
};

class Engine {
public:
    explicit Engine(InsuranceTerms terms = {});

    // --- commands; each appends one event-log line -------------------------

    /// Registers a long position and books the option premium to the
    /// exchange sink.
    void open_position(const OptionPosition& position);

    /// Sells the position back at the exchange for the given price.
    void close_position(const std::string& position_id, Money price_per_share, Date on);

    /// Exercises: books the intrinsic payoff (if any) and voids the
    /// position as settlement evidence.
    void exercise(const std::string& position_id, Money spot, Date on);

    /// Puts an eligible position on the matching waiting list.
    void request_insurance(const std::string& position_id, Date on);

    /// Matches the waiting list, pool by pool, runs verification, and
    /// opens a proposal for every accepted pair. Rejected pairs and
    /// residue stay on the waiting list.
    MatchingReport run_matching(Date on);

    /// Opens a proposal for an explicit pair (both positions must pass the
    /// duplicate-insurance examination). Returns the proposal id.
    std::string propose(const std::string& call_position, const std::string& put_position, Date on);

    /// Records one side's decision. When both sides have accepted the two
    /// contracts are issued and premiums are charged; a rejection returns
    /// both positions to the waiting list.
    void respond(const std::string& proposal_id, ProposalSide side, bool accept, Date on);

    /// Secondary-market transfer.
    TransferFees trade(const TransferOrder& order);

    /// Settles every active contract expiring on `on` at the given spot,
    /// in id order.
    std::vector<SettlementOutcome> settle_all(Money spot, Date on);

    // --- state access -------------------------------------------------------

    const InsuranceTerms& terms() const { return terms_; }
    const Ledger& ledger() const { return ledger_; }
    const ContractStore& contracts() const { return contracts_; }
    const PositionRegistry& registry() const { return registry_; }
    const std::map<std::string, ContractProposal>& proposals() const { return proposals_; }
    std::vector<std::string> waiting_list() const { return {waiting_.begin(), waiting_.end()}; }

    /// Canonical JSON dump of the full state; equal dumps mean equal state.
    std::string state_dump() const;

    /// The event log, one JSON object per line.
    const std::vector<std::string>& log_lines() const { return log_; }
    void write_log(std::ostream& os) const;

    /// Rebuilds an engine by replaying a JSONL event log.
    static Engine replay(std::istream& is);
    static Engine replay_lines(const std::vector<std::string>& lines);

private:
    void append_log(const std::string& line) { log_.push_back(line); }
    void apply_issue_if_ready(const std::string& proposal_id, Date on);
    bool position_pending(const std::string& position_id) const;

    InsuranceTerms terms_;
    PositionRegistry registry_;
    ContractStore contracts_;
    Ledger ledger_;
    std::map<std::string, ContractProposal> proposals_;
    std::set<std::string> waiting_;
    std::int64_t next_proposal_ = 1;
    std::int64_t next_contract_ = 1;
    std::vector<std::string> log_;
};

}  // namespace optinsure
