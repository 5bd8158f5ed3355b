#pragma once
/**
 * @file contracts.hpp
 * @brief Insurance contract lifecycle: proposal, premium collection,
 *        issuance, and settlement at maturity under the reimbursement
 *        policies.
 *
 * A contract pays its holder gross_reimbursement_per_share net of the
 * service charge at maturity iff (a) the insured option kind is strictly
 * out of the money at the settlement spot and (b) the holder can show an
 * unexercised position of identical kind/strike/expiry with at least the
 * covered share count, held through maturity and not consumed by another
 * claim. Otherwise the insurer keeps the premium.
 */

#include "optinsure/errors.hpp"
#include "optinsure/instruments.hpp"
#include "optinsure/ledger.hpp"
#include "optinsure/matching.hpp"
#include "optinsure/money.hpp"
#include "optinsure/terms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace optinsure {

enum class ContractStatus { Active, SettledReimbursed, ExpiredWorthless, Terminated };
enum class AcceptanceState { Pending, Accepted, Rejected };
enum class ProposalSide { CallSide, PutSide };

const char* to_string(ContractStatus s);
const char* to_string(AcceptanceState s);

struct PremiumSplit {
    Money total;       // per share, yardstick * max(call, put premium)
    Money call_share;  // per share; carries the odd 1e-4 unit if total is odd
    Money put_share;
};

/// Splits the pair's insurance premium evenly between the two sides.
PremiumSplit compute_premium_split(Money call_premium, Money put_premium,
                                   const InsuranceTerms& terms);

/// The instrument issued to one side of a matched pair.
struct InsuranceContract {
    std::string id;
    std::string pair_id;  // links the two contracts born from one pair
    OptionSpec underlying;
    std::int64_t shares = 0;
    Money premium_paid_per_share;
    Money gross_reimbursement_per_share;  // yardstick * insured option premium at issuance
    Rate service_charge;
    std::string holder;
    ContractStatus status = ContractStatus::Active;
};

/// Open option positions with their insurance bookkeeping: whether a
/// position backs an active contract, whether it was closed or exercised,
/// and whether it has already substantiated a claim.
class PositionRegistry {
public:
    struct Record {
        OptionPosition position;
        std::optional<Date> closed_on;
        std::optional<std::string> insured_by;
        bool claim_used = false;
    };

    void open(OptionPosition position);
    void close(const std::string& id, Date on);
    void mark_exercised(const std::string& id);
    void mark_insured(const std::string& id, const std::string& contract_id);

    bool exists(const std::string& id) const { return records_.count(id) != 0; }
    const Record& get(const std::string& id) const;

    /// True when the position may enter the matching pool: open,
    /// unexercised, and not backing an active contract.
    bool eligible_for_insurance(const std::string& id) const;

    /// Finds a position of `holder` usable as settlement evidence for the
    /// given spec and share count, or nullopt.
    std::optional<std::string> find_evidence(const std::string& holder, const OptionSpec& spec,
                                             std::int64_t min_shares) const;

    /// Marks a position as consumed by a claim.
    void consume_claim(const std::string& id);

    const std::map<std::string, Record>& records() const { return records_; }

private:
    Record& require(const std::string& id);
    std::map<std::string, Record> records_;
};

/// Terms offered to a matched pair, pending acceptance by both sides.
struct ContractProposal {
    std::string id;
    MatchPair pair;
    std::int64_t covered_shares = 0;
    Money call_premium_per_share;  // insurance premium each side would pay
    Money put_premium_per_share;
    Money call_gross_reimbursement_per_share;
    Money put_gross_reimbursement_per_share;
    AcceptanceState call_state = AcceptanceState::Pending;
    AcceptanceState put_state = AcceptanceState::Pending;
};

/// Drafts the proposal for a matched pair after the duplicate-insurance
/// examination. Throws ContractException on DuplicateInsurance,
/// ExpiryMismatch, PositionExercised, PositionClosed or UnknownPosition.
ContractProposal make_proposal(std::string proposal_id, const MatchPair& pair,
                               const PositionRegistry& registry, const InsuranceTerms& terms);

struct IssuedPair {
    InsuranceContract call_side;
    InsuranceContract put_side;
};

/// Issues both contracts of a fully accepted proposal: charges each side
/// its premium share (ledger entries to the insurer) and flags both
/// positions as insured.
IssuedPair issue_accepted(const ContractProposal& proposal, std::string call_contract_id,
                          std::string put_contract_id, PositionRegistry& registry, Ledger& ledger,
                          const InsuranceTerms& terms, Date when);

enum class SettleDisposition { Reimbursed, ExpiredWorthless, TerminatedNoEvidence };

const char* to_string(SettleDisposition d);

struct SettlementOutcome {
    std::string contract_id;
    SettleDisposition disposition = SettleDisposition::ExpiredWorthless;
    Money gross_total;
    Money service_charge_total;
    Money net_total;
    std::optional<std::string> evidence_position;
};

/// Net payout per share after the service charge; rounded half-up at 1e-4
/// once on the per-share figure. Shared by settlement and the risk profiler.
Money net_reimbursement_per_share(Money gross_per_share, Rate service_charge);

/// Settles one contract at maturity. Throws on AlreadySettled/WrongDate;
/// a missing-evidence claim is not an error but a Terminated outcome.
/// Reimbursements are booked gross with the service charge flowing back.
SettlementOutcome settle(InsuranceContract& contract, Money spot_at_maturity, Date on,
                         PositionRegistry& registry, Ledger& ledger);

}  // namespace optinsure
