#pragma once
/// @file market.hpp
/// Secondary market for insurance contracts: ownership transfers at
/// exogenous prices with the split transfer fee. The insurer never takes
/// a side; its market P&L is exactly the fees.

#include "optinsure/contracts.hpp"
#include "optinsure/ledger.hpp"
#include "optinsure/terms.hpp"

#include <map>
#include <string>

namespace optinsure {

/// All issued contracts keyed by id. Ordered so iteration is deterministic.
using ContractStore = std::map<std::string, InsuranceContract>;

struct TransferOrder {
    std::string contract_id;
    std::string seller;
    std::string buyer;
    Money price_per_share;
    Date time;
};

struct TransferFees {
    Money buyer_fee_total;
    Money seller_fee_total;
};

/// Moves ownership to the buyer. The buyer pays price plus half the
/// transfer fee, the seller receives price minus the other half; both fee
/// legs go to the insurer. Contract clauses are untouched. Fees are
/// (transfer_fee / 2) * price per share, rounded half-up at 1e-4, then
/// scaled by the covered shares.
TransferFees execute_transfer(const TransferOrder& order, const InsuranceTerms& terms,
                              ContractStore& contracts, Ledger& ledger);

/// Current holder. Throws TransferException{UnknownContract}.
const std::string& holder_of(const ContractStore& contracts, const std::string& contract_id);

}  // namespace optinsure
