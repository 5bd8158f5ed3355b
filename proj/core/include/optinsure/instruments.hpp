#pragma once
/**
 * @file instruments.hpp
 * @brief Vanilla option modeling: moneyness, exercise payoff, and a
 *        Black-Scholes pricer used as the premium reference.
 */

#include "optinsure/date.hpp"
#include "optinsure/money.hpp"

#include <cstdint>
#include <string>

namespace optinsure {

enum class OptionKind { Call, Put };

enum class Moneyness { InTheMoney, AtTheMoney, OutOfTheMoney };

const char* to_string(OptionKind k);
const char* to_string(Moneyness m);
OptionKind option_kind_from_string(const std::string& s);

/// Identity of a vanilla exchange-traded option.
struct OptionSpec {
    std::string symbol;
    OptionKind kind = OptionKind::Call;
    Money strike;
    Date expiry;

    void validate() const;  // strike > 0

    friend bool operator==(const OptionSpec&, const OptionSpec&) = default;
};

/// A long option position held by an investor.
struct OptionPosition {
    std::string id;
    std::string owner;
    OptionSpec spec;
    std::int64_t shares = 0;
    Money premium_paid_per_share;
    Date open_time;
    bool exercised = false;

    void validate() const;  // shares >= 1, premium >= 0, spec valid
};

/// ITM/ATM/OTM classification at a given spot. At-the-money means exact
/// strike/spot equality; the classification is total and exclusive.
Moneyness moneyness(const OptionSpec& spec, Money spot);

/// Intrinsic value per share: max(spot - strike, 0) for calls, mirrored
/// for puts. Never negative.
Money exercise_payoff(const OptionSpec& spec, Money spot);

/// Inputs to the closed-form pricer. Rates are annualized decimal
/// fractions; the day count is ACT/365.
struct PricingParams {
    Money spot;
    Money strike;
    int days_to_expiry = 0;
    double rate = 0.0;
    double dividend_yield = 0.0;
    double volatility = 0.0;

    void validate() const;  // spot > 0, strike > 0, days >= 0, volatility >= 0
};

/// European Black-Scholes value per share, rounded to the 1e-4 money grid.
///
/// With zero days to expiry this is the intrinsic value; with zero
/// volatility it degrades to the discounted forward intrinsic limit.
Money black_scholes_price(const PricingParams& p, OptionKind kind);

/// Unrounded double-precision Black-Scholes value (parity checks, tests).
double black_scholes_price_raw(const PricingParams& p, OptionKind kind);

/// Standard normal CDF via erfc; absolute error well below 1e-7.
double norm_cdf(double x);

}  // namespace optinsure
