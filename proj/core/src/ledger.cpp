#include "optinsure/ledger.hpp"

#include <map>
#include <ostream>
#include <stdexcept>

namespace optinsure {

const char* to_string(CashFlowReason r) {
    switch (r) {
        case CashFlowReason::OptionPremium: return "OptionPremium";
        case CashFlowReason::InsurancePremium: return "InsurancePremium";
        case CashFlowReason::Reimbursement: return "Reimbursement";
        case CashFlowReason::ServiceCharge: return "ServiceCharge";
        case CashFlowReason::TransferPrice: return "TransferPrice";
        case CashFlowReason::TransferFee: return "TransferFee";
        case CashFlowReason::ExercisePayoff: return "ExercisePayoff";
    }
    return "?";
}

CashFlowReason cash_flow_reason_from_string(const std::string& s) {
    for (auto r : {CashFlowReason::OptionPremium, CashFlowReason::InsurancePremium,
                   CashFlowReason::Reimbursement, CashFlowReason::ServiceCharge,
                   CashFlowReason::TransferPrice, CashFlowReason::TransferFee,
                   CashFlowReason::ExercisePayoff})
        if (s == to_string(r)) return r;
    throw std::invalid_argument("unknown cash flow reason '" + s + "'");
}

void Ledger::record(Date time, std::string debtor, std::string creditor, Money amount,
                    CashFlowReason reason) {
    if (amount <= Money{}) throw std::invalid_argument("Ledger: amount must be positive");
    if (debtor == creditor) throw std::invalid_argument("Ledger: debtor equals creditor");
    entries_.push_back({time, std::move(debtor), std::move(creditor), amount, reason});
}

Money Ledger::entity_pnl(const std::string& entity, std::optional<Date> from,
                         std::optional<Date> to) const {
    Money net;
    for (const auto& e : entries_) {
        if (from && e.time < *from) continue;
        if (to && *to < e.time) continue;
        if (e.creditor == entity) net += e.amount;
        if (e.debtor == entity) net -= e.amount;
    }
    return net;
}

Money Ledger::entity_net_by_reason(const std::string& entity, CashFlowReason reason) const {
    Money net;
    for (const auto& e : entries_) {
        if (e.reason != reason) continue;
        if (e.creditor == entity) net += e.amount;
        if (e.debtor == entity) net -= e.amount;
    }
    return net;
}

std::vector<std::pair<std::string, Money>> Ledger::pnl_by_entity() const {
    std::map<std::string, Money> net;
    for (const auto& e : entries_) {
        net[e.creditor] += e.amount;
        net[e.debtor] -= e.amount;
    }
    return {net.begin(), net.end()};
}

void Ledger::write_entries_csv(std::ostream& os) const {
    os << "seq,time,debtor,creditor,amount,reason\n";
    std::size_t seq = 0;
    for (const auto& e : entries_)
        os << ++seq << ',' << e.time.to_string() << ',' << e.debtor << ',' << e.creditor << ','
           << e.amount.to_string() << ',' << to_string(e.reason) << '\n';
}

void Ledger::write_pnl_csv(std::ostream& os) const {
    struct Sums { Money credits, debits; };
    std::map<std::string, Sums> sums;
    for (const auto& e : entries_) {
        sums[e.creditor].credits += e.amount;
        sums[e.debtor].debits += e.amount;
    }
    os << "entity,credits,debits,net\n";
    for (const auto& [entity, s] : sums)
        os << entity << ',' << s.credits.to_string() << ',' << s.debits.to_string() << ','
           << (s.credits - s.debits).to_string() << '\n';
}

Money insurer_expected_value(const std::vector<std::pair<Rate, Money>>& outcomes) {
    std::int64_t total_ppm = 0;
    __int128 acc = 0;
    for (const auto& [p, pnl] : outcomes) {
        if (p.ppm() < 0) throw std::invalid_argument("insurer_expected_value: negative probability");
        total_ppm += p.ppm();
        acc += static_cast<__int128>(p.ppm()) * pnl.units();
    }
    if (total_ppm != Rate::kScale)
        throw std::invalid_argument("insurer_expected_value: probabilities must sum to 1");
    return Money::from_units(round_div_half_up(acc, Rate::kScale));
}

}  // namespace optinsure
