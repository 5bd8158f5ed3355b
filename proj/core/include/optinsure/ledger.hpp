#pragma once
/// @file ledger.hpp
/// Double-entry cash-flow recording. Every money movement is a dated
/// debtor->creditor entry, so the books sum to zero by construction and
/// any entity's P&L is a fold over its entries.

#include "optinsure/date.hpp"
#include "optinsure/money.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace optinsure {

/// The insurer's own account.
inline constexpr const char* kInsurerEntity = "INSURER";
/// External sink standing in for the option exchange counterparty.
inline constexpr const char* kExchangeEntity = "EXCHANGE";

enum class CashFlowReason {
    OptionPremium,
    InsurancePremium,
    Reimbursement,
    ServiceCharge,
    TransferPrice,
    TransferFee,
    ExercisePayoff,
};

const char* to_string(CashFlowReason r);
CashFlowReason cash_flow_reason_from_string(const std::string& s);

struct CashFlowEntry {
    Date time;
    std::string debtor;
    std::string creditor;
    Money amount;  // > 0
    CashFlowReason reason = CashFlowReason::OptionPremium;
};

class Ledger {
public:
    /// Appends an entry; amount must be positive and debtor != creditor.
    void record(Date time, std::string debtor, std::string creditor, Money amount,
                CashFlowReason reason);

    const std::vector<CashFlowEntry>& entries() const { return entries_; }

    /// Credits minus debits for one entity, optionally windowed by date
    /// (inclusive on both ends).
    Money entity_pnl(const std::string& entity, std::optional<Date> from = std::nullopt,
                     std::optional<Date> to = std::nullopt) const;

    /// Net amount for one entity restricted to one reason code.
    Money entity_net_by_reason(const std::string& entity, CashFlowReason reason) const;

    /// All entities that appear in the book, sorted, with their net P&L.
    std::vector<std::pair<std::string, Money>> pnl_by_entity() const;

    /// CSV export: seq,time,debtor,creditor,amount,reason.
    void write_entries_csv(std::ostream& os) const;
    /// CSV export: entity,credits,debits,net.
    void write_pnl_csv(std::ostream& os) const;

private:
    std::vector<CashFlowEntry> entries_;
};

/// Probability-weighted mean of insurer outcomes. Probabilities must be
/// non-negative and sum to exactly one; throws std::invalid_argument
/// otherwise. The division rounds half-up at 1e-4, computed after exact
/// accumulation so outcome order does not matter.
Money insurer_expected_value(const std::vector<std::pair<Rate, Money>>& outcomes);

}  // namespace optinsure
