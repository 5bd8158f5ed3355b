#pragma once
/**
 * @file money.hpp
 * @brief Exact fixed-point currency arithmetic.
 *
 * All cash amounts in the engine are held as signed counts of 1e-4
 * currency units, so every quoted figure (742.5, 0.025, 2.3475) has a
 * lossless encoding and sums are exact. Rounding happens only at the
 * declared sites (fee, premium and reimbursement computation) and is
 * round-half-up at the 1e-4 digit, ties away from zero.
 */

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace optinsure {

/// Exact decimal fraction with parts-per-million resolution.
///
/// Used for the contract terms (yardstick, service charge, transfer fee)
/// and for probabilities, so that products with Money stay exact integer
/// arithmetic instead of drifting through binary floating point.
class Rate {
public:
    static constexpr std::int64_t kScale = 1'000'000;

    constexpr Rate() = default;

    static constexpr Rate from_ppm(std::int64_t ppm) { return Rate(ppm); }

    /// Parses a plain decimal such as "0.5" or "0.01" (at most 6 places).
    static Rate from_string(std::string_view text);

    constexpr std::int64_t ppm() const { return ppm_; }

    /// 1 - r, e.g. the kept fraction after a service charge.
    constexpr Rate complement() const { return Rate(kScale - ppm_); }

    double to_double() const { return static_cast<double>(ppm_) / kScale; }
    std::string to_string() const;

    friend constexpr auto operator<=>(Rate, Rate) = default;

private:
    explicit constexpr Rate(std::int64_t ppm) : ppm_(ppm) {}
    std::int64_t ppm_ = 0;
};

/// Fixed-point currency amount, 1 unit = 1e-4 of the quote currency.
class Money {
public:
    static constexpr std::int64_t kScale = 10'000;

    constexpr Money() = default;

    static constexpr Money from_units(std::int64_t units) { return Money(units); }

    /// Whole currency units, e.g. from_major(500) is $500.
    static constexpr Money from_major(std::int64_t major) { return Money(major * kScale); }

    /// Parses "742.5", "-0.025", "12". More than four decimal places is an
    /// error unless the extra digits are zero.
    static Money from_string(std::string_view text);

    /// Nearest representable amount, ties away from zero. Used to land
    /// floating-point pricer output on the money grid.
    static Money from_double_rounded(double value);

    constexpr std::int64_t units() const { return units_; }
    constexpr bool is_zero() const { return units_ == 0; }
    constexpr bool is_negative() const { return units_ < 0; }

    double to_double() const { return static_cast<double>(units_) / kScale; }

    /// Minimal decimal rendering: "12", "742.5", "2.3475".
    std::string to_string() const;

    /// Exact scaling by a share count.
    constexpr Money scaled_by(std::int64_t n) const { return Money(units_ * n); }

    /// amount * num / den, rounded half-up at 1e-4 (ties away from zero).
    /// This is a declared rounding site.
    Money times_frac(std::int64_t num, std::int64_t den) const;

    /// amount * rate, rounded half-up at 1e-4. Declared rounding site.
    Money times(Rate r) const { return times_frac(r.ppm(), Rate::kScale); }

    /// amount / n, rounded half-up at 1e-4. Declared rounding site.
    Money divided_by(std::int64_t n) const { return times_frac(1, n); }

    constexpr Money operator-() const { return Money(-units_); }
    friend constexpr Money operator+(Money a, Money b) { return Money(a.units_ + b.units_); }
    friend constexpr Money operator-(Money a, Money b) { return Money(a.units_ - b.units_); }
    Money& operator+=(Money other) { units_ += other.units_; return *this; }
    Money& operator-=(Money other) { units_ -= other.units_; return *this; }

    friend constexpr auto operator<=>(Money, Money) = default;

private:
    explicit constexpr Money(std::int64_t units) : units_(units) {}
    std::int64_t units_ = 0;
};

constexpr Money abs(Money m) { return m.is_negative() ? -m : m; }
constexpr Money min(Money a, Money b) { return a < b ? a : b; }
constexpr Money max(Money a, Money b) { return a < b ? b : a; }

/// num / den rounded to the nearest integer, ties away from zero. den > 0.
std::int64_t round_div_half_up(__int128 num, std::int64_t den);

}  // namespace optinsure
