#include "optinsure/market.hpp"

namespace optinsure {

const std::string& holder_of(const ContractStore& contracts, const std::string& contract_id) {
    auto it = contracts.find(contract_id);
    if (it == contracts.end())
        throw TransferException(TransferError::UnknownContract, "contract '" + contract_id + "'");
    return it->second.holder;
}

TransferFees execute_transfer(const TransferOrder& order, const InsuranceTerms& terms,
                              ContractStore& contracts, Ledger& ledger) {
    auto it = contracts.find(order.contract_id);
    if (it == contracts.end())
        throw TransferException(TransferError::UnknownContract, "contract '" + order.contract_id + "'");
    InsuranceContract& contract = it->second;

    if (order.price_per_share.is_negative())
        throw TransferException(TransferError::BadPrice, "negative price for '" + order.contract_id + "'");
    if (contract.status != ContractStatus::Active)
        throw TransferException(TransferError::ContractNotActive, "contract '" + order.contract_id + "'");
    if (order.time >= contract.underlying.expiry)
        throw TransferException(TransferError::AfterExpiry,
                                "contract '" + order.contract_id + "' expires " +
                                    contract.underlying.expiry.to_string());
    if (contract.holder != order.seller)
        throw TransferException(TransferError::NotHolder,
                                "'" + order.seller + "' does not hold '" + order.contract_id + "'");

    const Money fee_per_share =
        order.price_per_share.times_frac(terms.transfer_fee.ppm(), 2 * Rate::kScale);
    TransferFees fees{fee_per_share.scaled_by(contract.shares),
                      fee_per_share.scaled_by(contract.shares)};
    const Money price_total = order.price_per_share.scaled_by(contract.shares);

    if (price_total > Money{})
        ledger.record(order.time, order.buyer, order.seller, price_total, CashFlowReason::TransferPrice);
    if (fees.buyer_fee_total > Money{})
        ledger.record(order.time, order.buyer, kInsurerEntity, fees.buyer_fee_total,
                      CashFlowReason::TransferFee);
    if (fees.seller_fee_total > Money{})
        ledger.record(order.time, order.seller, kInsurerEntity, fees.seller_fee_total,
                      CashFlowReason::TransferFee);

    contract.holder = order.buyer;
    return fees;
}

}  // namespace optinsure
