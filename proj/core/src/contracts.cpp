#include "optinsure/contracts.hpp"

#include <stdexcept>

namespace optinsure {

void InsuranceTerms::validate() const {
    if (yardstick.ppm() <= 0 || yardstick.ppm() >= Rate::kScale)
        throw std::invalid_argument("InsuranceTerms: yardstick must lie in (0, 1)");
    if (service_charge.ppm() < 0 || service_charge.ppm() >= Rate::kScale)
        throw std::invalid_argument("InsuranceTerms: service charge must lie in [0, 1)");
    if (transfer_fee.ppm() < 0 || transfer_fee.ppm() >= Rate::kScale)
        throw std::invalid_argument("InsuranceTerms: transfer fee must lie in [0, 1)");
}

const char* to_string(ContractStatus s) {
    switch (s) {
        case ContractStatus::Active: return "active";
        case ContractStatus::SettledReimbursed: return "settled_reimbursed";
        case ContractStatus::ExpiredWorthless: return "expired_worthless";
        case ContractStatus::Terminated: return "terminated";
    }
    return "?";
}

const char* to_string(AcceptanceState s) {
    switch (s) {
        case AcceptanceState::Pending: return "pending";
        case AcceptanceState::Accepted: return "accepted";
        case AcceptanceState::Rejected: return "rejected";
    }
    return "?";
}

const char* to_string(SettleDisposition d) {
    switch (d) {
        case SettleDisposition::Reimbursed: return "reimbursed";
        case SettleDisposition::ExpiredWorthless: return "expired_worthless";
        case SettleDisposition::TerminatedNoEvidence: return "terminated_no_evidence";
    }
    return "?";
}

const char* to_string(ContractError e) {
    switch (e) {
        case ContractError::DuplicateInsurance: return "DuplicateInsurance";
        case ContractError::ExpiryMismatch: return "ExpiryMismatch";
        case ContractError::PositionExercised: return "PositionExercised";
        case ContractError::PositionClosed: return "PositionClosed";
        case ContractError::UnknownPosition: return "UnknownPosition";
        case ContractError::AlreadySettled: return "AlreadySettled";
        case ContractError::WrongDate: return "WrongDate";
    }
    return "?";
}

const char* to_string(TransferError e) {
    switch (e) {
        case TransferError::UnknownContract: return "UnknownContract";
        case TransferError::NotHolder: return "NotHolder";
        case TransferError::ContractNotActive: return "ContractNotActive";
        case TransferError::AfterExpiry: return "AfterExpiry";
        case TransferError::BadPrice: return "BadPrice";
    }
    return "?";
}

PremiumSplit compute_premium_split(Money call_premium, Money put_premium,
                                   const InsuranceTerms& terms) {
    if (call_premium.is_negative() || put_premium.is_negative())
        throw std::invalid_argument("compute_premium_split: negative premium");
    PremiumSplit split;
    split.total = max(call_premium, put_premium).times(terms.yardstick);
    const std::int64_t half = split.total.units() / 2;
    split.put_share = Money::from_units(half);
    split.call_share = split.total - split.put_share;
    return split;
}

// --- PositionRegistry ------------------------------------------------------

void PositionRegistry::open(OptionPosition position) {
    position.validate();
    const std::string id = position.id;
    auto [it, inserted] = records_.emplace(id, Record{std::move(position), {}, {}, false});
    if (!inserted)
        throw std::invalid_argument("PositionRegistry: duplicate position id '" + id + "'");
}

PositionRegistry::Record& PositionRegistry::require(const std::string& id) {
    auto it = records_.find(id);
    if (it == records_.end())
        throw ContractException(ContractError::UnknownPosition, "position '" + id + "'");
    return it->second;
}

const PositionRegistry::Record& PositionRegistry::get(const std::string& id) const {
    return const_cast<PositionRegistry*>(this)->require(id);
}

void PositionRegistry::close(const std::string& id, Date on) {
    Record& r = require(id);
    if (r.closed_on)
        throw ContractException(ContractError::PositionClosed, "position '" + id + "' already closed");
    r.closed_on = on;
}

void PositionRegistry::mark_exercised(const std::string& id) {
    require(id).position.exercised = true;
}

void PositionRegistry::mark_insured(const std::string& id, const std::string& contract_id) {
    Record& r = require(id);
    if (r.insured_by)
        throw ContractException(ContractError::DuplicateInsurance,
                                "position '" + id + "' already backs contract '" + *r.insured_by + "'");
    r.insured_by = contract_id;
}

bool PositionRegistry::eligible_for_insurance(const std::string& id) const {
    auto it = records_.find(id);
    if (it == records_.end()) return false;
    const Record& r = it->second;
    return !r.closed_on && !r.position.exercised && !r.insured_by;
}

std::optional<std::string> PositionRegistry::find_evidence(const std::string& holder,
                                                           const OptionSpec& spec,
                                                           std::int64_t min_shares) const {
    for (const auto& [id, r] : records_) {
        if (r.position.owner != holder) continue;
        if (r.position.spec != spec) continue;
        if (r.position.shares < min_shares) continue;
        if (r.position.exercised || r.closed_on || r.claim_used) continue;
        return id;
    }
    return std::nullopt;
}

void PositionRegistry::consume_claim(const std::string& id) { require(id).claim_used = true; }

// --- Proposal and issuance --------------------------------------------------

ContractProposal make_proposal(std::string proposal_id, const MatchPair& pair,
                               const PositionRegistry& registry, const InsuranceTerms& terms) {
    terms.validate();
    for (const OptionPosition* pos : {&pair.call, &pair.put}) {
        if (!registry.exists(pos->id))
            throw ContractException(ContractError::UnknownPosition, "position '" + pos->id + "'");
        const auto& record = registry.get(pos->id);
        if (record.position.exercised)
            throw ContractException(ContractError::PositionExercised, "position '" + pos->id + "'");
        if (record.closed_on)
            throw ContractException(ContractError::PositionClosed, "position '" + pos->id + "'");
        if (record.insured_by)
            throw ContractException(ContractError::DuplicateInsurance,
                                    "position '" + pos->id + "' already insured");
    }
    if (pair.call.spec.expiry != pair.put.spec.expiry ||
        pair.call.spec.symbol != pair.put.spec.symbol)
        throw ContractException(ContractError::ExpiryMismatch, "pair '" + pair.id() + "'");

    ContractProposal proposal;
    proposal.id = std::move(proposal_id);
    proposal.pair = pair;
    proposal.covered_shares = pair.covered_shares();
    const PremiumSplit split =
        compute_premium_split(pair.call.premium_paid_per_share, pair.put.premium_paid_per_share, terms);
    proposal.call_premium_per_share = split.call_share;
    proposal.put_premium_per_share = split.put_share;
    proposal.call_gross_reimbursement_per_share =
        pair.call.premium_paid_per_share.times(terms.yardstick);
    proposal.put_gross_reimbursement_per_share =
        pair.put.premium_paid_per_share.times(terms.yardstick);
    return proposal;
}

IssuedPair issue_accepted(const ContractProposal& proposal, std::string call_contract_id,
                          std::string put_contract_id, PositionRegistry& registry, Ledger& ledger,
                          const InsuranceTerms& terms, Date when) {
    if (proposal.call_state != AcceptanceState::Accepted ||
        proposal.put_state != AcceptanceState::Accepted)
        throw std::logic_error("issue_accepted: proposal not accepted by both sides");

    IssuedPair issued;
    issued.call_side = {std::move(call_contract_id),
                        proposal.pair.id(),
                        proposal.pair.call.spec,
                        proposal.covered_shares,
                        proposal.call_premium_per_share,
                        proposal.call_gross_reimbursement_per_share,
                        terms.service_charge,
                        proposal.pair.call.owner,
                        ContractStatus::Active};
    issued.put_side = {std::move(put_contract_id),
                       proposal.pair.id(),
                       proposal.pair.put.spec,
                       proposal.covered_shares,
                       proposal.put_premium_per_share,
                       proposal.put_gross_reimbursement_per_share,
                       terms.service_charge,
                       proposal.pair.put.owner,
                       ContractStatus::Active};

    registry.mark_insured(proposal.pair.call.id, issued.call_side.id);
    registry.mark_insured(proposal.pair.put.id, issued.put_side.id);

    const Money call_total = proposal.call_premium_per_share.scaled_by(proposal.covered_shares);
    const Money put_total = proposal.put_premium_per_share.scaled_by(proposal.covered_shares);
    if (call_total > Money{})
        ledger.record(when, proposal.pair.call.owner, kInsurerEntity, call_total,
                      CashFlowReason::InsurancePremium);
    if (put_total > Money{})
        ledger.record(when, proposal.pair.put.owner, kInsurerEntity, put_total,
                      CashFlowReason::InsurancePremium);
    return issued;
}

// --- Settlement --------------------------------------------------------------

Money net_reimbursement_per_share(Money gross_per_share, Rate service_charge) {
    return gross_per_share.times(service_charge.complement());
}

SettlementOutcome settle(InsuranceContract& contract, Money spot_at_maturity, Date on,
                         PositionRegistry& registry, Ledger& ledger) {
    if (contract.status != ContractStatus::Active)
        throw ContractException(ContractError::AlreadySettled, "contract '" + contract.id + "'");
    if (on != contract.underlying.expiry)
        throw ContractException(ContractError::WrongDate,
                                "contract '" + contract.id + "' expires " +
                                    contract.underlying.expiry.to_string() + ", got " + on.to_string());

    SettlementOutcome outcome;
    outcome.contract_id = contract.id;

    // Policy: reimbursement only when the insured option kind is strictly
    // out of the money at maturity.
    if (moneyness(contract.underlying, spot_at_maturity) != Moneyness::OutOfTheMoney) {
        contract.status = ContractStatus::ExpiredWorthless;
        outcome.disposition = SettleDisposition::ExpiredWorthless;
        return outcome;
    }

    auto evidence = registry.find_evidence(contract.holder, contract.underlying, contract.shares);
    if (!evidence) {
        contract.status = ContractStatus::Terminated;
        outcome.disposition = SettleDisposition::TerminatedNoEvidence;
        return outcome;
    }

    registry.consume_claim(*evidence);
    const Money net_per_share =
        net_reimbursement_per_share(contract.gross_reimbursement_per_share, contract.service_charge);
    outcome.gross_total = contract.gross_reimbursement_per_share.scaled_by(contract.shares);
    outcome.net_total = net_per_share.scaled_by(contract.shares);
    outcome.service_charge_total = outcome.gross_total - outcome.net_total;
    outcome.evidence_position = evidence;
    outcome.disposition = SettleDisposition::Reimbursed;

    if (outcome.gross_total > Money{})
        ledger.record(on, kInsurerEntity, contract.holder, outcome.gross_total,
                      CashFlowReason::Reimbursement);
    if (outcome.service_charge_total > Money{})
        ledger.record(on, contract.holder, kInsurerEntity, outcome.service_charge_total,
                      CashFlowReason::ServiceCharge);

    contract.status = ContractStatus::SettledReimbursed;
    return outcome;
}

}  // namespace optinsure
