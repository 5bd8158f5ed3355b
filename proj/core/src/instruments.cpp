#include "optinsure/instruments.hpp"

#include <cmath>
#include <stdexcept>

namespace optinsure {

const char* to_string(OptionKind k) { return k == OptionKind::Call ? "call" : "put"; }

const char* to_string(Moneyness m) {
    switch (m) {
        case Moneyness::InTheMoney: return "ITM";
        case Moneyness::AtTheMoney: return "ATM";
        case Moneyness::OutOfTheMoney: return "OTM";
    }
    return "?";
}

OptionKind option_kind_from_string(const std::string& s) {
    if (s == "call") return OptionKind::Call;
    if (s == "put") return OptionKind::Put;
    throw std::invalid_argument("option kind must be 'call' or 'put', got '" + s + "'");
}

void OptionSpec::validate() const {
    if (strike <= Money{}) throw std::invalid_argument("OptionSpec: strike must be positive");
    if (symbol.empty()) throw std::invalid_argument("OptionSpec: empty symbol");
}

void OptionPosition::validate() const {
    spec.validate();
    if (id.empty()) throw std::invalid_argument("OptionPosition: empty id");
    if (owner.empty()) throw std::invalid_argument("OptionPosition: empty owner");
    if (shares < 1) throw std::invalid_argument("OptionPosition: shares must be >= 1");
    if (premium_paid_per_share.is_negative())
        throw std::invalid_argument("OptionPosition: negative premium");
}

Moneyness moneyness(const OptionSpec& spec, Money spot) {
    if (spot.is_negative()) throw std::invalid_argument("moneyness: negative spot");
    if (spot == spec.strike) return Moneyness::AtTheMoney;
    const bool call_itm = spec.strike < spot;
    if (spec.kind == OptionKind::Call)
        return call_itm ? Moneyness::InTheMoney : Moneyness::OutOfTheMoney;
    return call_itm ? Moneyness::OutOfTheMoney : Moneyness::InTheMoney;
}

Money exercise_payoff(const OptionSpec& spec, Money spot) {
    if (spot.is_negative()) throw std::invalid_argument("exercise_payoff: negative spot");
    Money intrinsic = spec.kind == OptionKind::Call ? spot - spec.strike : spec.strike - spot;
    return max(intrinsic, Money{});
}

void PricingParams::validate() const {
    if (spot <= Money{}) throw std::invalid_argument("PricingParams: spot must be positive");
    if (strike <= Money{}) throw std::invalid_argument("PricingParams: strike must be positive");
    if (days_to_expiry < 0) throw std::invalid_argument("PricingParams: negative days_to_expiry");
    if (volatility < 0.0) throw std::invalid_argument("PricingParams: negative volatility");
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double black_scholes_price_raw(const PricingParams& p, OptionKind kind) {
    p.validate();
    const double s = p.spot.to_double();
    const double k = p.strike.to_double();
    if (p.days_to_expiry == 0) {
        const double intrinsic = kind == OptionKind::Call ? s - k : k - s;
        return intrinsic > 0.0 ? intrinsic : 0.0;
    }
    const double t = p.days_to_expiry / 365.0;
    const double disc_s = s * std::exp(-p.dividend_yield * t);
    const double disc_k = k * std::exp(-p.rate * t);
    if (p.volatility == 0.0) {
        const double intrinsic = kind == OptionKind::Call ? disc_s - disc_k : disc_k - disc_s;
        return intrinsic > 0.0 ? intrinsic : 0.0;
    }
    const double sig_sqrt_t = p.volatility * std::sqrt(t);
    const double d1 =
        (std::log(s / k) + (p.rate - p.dividend_yield + 0.5 * p.volatility * p.volatility) * t) /
        sig_sqrt_t;
    const double d2 = d1 - sig_sqrt_t;
    if (kind == OptionKind::Call) return disc_s * norm_cdf(d1) - disc_k * norm_cdf(d2);
    return disc_k * norm_cdf(-d2) - disc_s * norm_cdf(-d1);
}

Money black_scholes_price(const PricingParams& p, OptionKind kind) {
    if (p.days_to_expiry == 0) {
        p.validate();
        Money intrinsic = kind == OptionKind::Call ? p.spot - p.strike : p.strike - p.spot;
        return max(intrinsic, Money{});
    }
    return Money::from_double_rounded(black_scholes_price_raw(p, kind));
}

}  // namespace optinsure
