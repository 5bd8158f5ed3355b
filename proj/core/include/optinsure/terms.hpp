#pragma once
/// @file terms.hpp
/// Commercial terms applied by the insurer to every issued pair.

#include "optinsure/money.hpp"

namespace optinsure {

/// The insurer's pricing knobs.
///
/// The yardstick scales both the premium charged to a matched pair and each
/// side's stipulated reimbursement; the service charge is retained from any
/// reimbursement actually paid; the transfer fee applies to secondary-market
/// trades and is split half/half between buyer and seller.
struct InsuranceTerms {
    Rate yardstick = Rate::from_ppm(500'000);       // 0.5
    Rate service_charge = Rate::from_ppm(10'000);   // 0.01 of the reimbursement
    Rate transfer_fee = Rate::from_ppm(20'000);     // 0.02 of trade value, split

    /// Throws std::invalid_argument when outside the valid ranges
    /// (0 < yardstick < 1, 0 <= service_charge < 1, 0 <= transfer_fee < 1).
    void validate() const;
};

}  // namespace optinsure
