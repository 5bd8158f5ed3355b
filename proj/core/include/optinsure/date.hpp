#pragma once
/// @file date.hpp
/// Calendar dates, the timestamp granularity of the whole engine.
/// Positions, trades, ledger entries and settlements are all dated at
/// day resolution; intra-day ordering is the command-stream order.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace optinsure {

/// A calendar date stored as days since 1970-01-01 (proleptic Gregorian).
class Date {
public:
    constexpr Date() = default;

    /// Throws std::invalid_argument for impossible dates.
    static Date from_ymd(int year, int month, int day);

    /// ISO form "2013-02-15".
    static Date from_string(std::string_view iso);

    std::string to_string() const;

    constexpr std::int32_t serial() const { return serial_; }
    static constexpr Date from_serial(std::int32_t s) { return Date(s); }

    friend constexpr auto operator<=>(Date, Date) = default;

private:
    explicit constexpr Date(std::int32_t serial) : serial_(serial) {}
    std::int32_t serial_ = 0;
};

}  // namespace optinsure
