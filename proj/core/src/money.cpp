#include "optinsure/money.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace optinsure {

namespace {

struct ParsedDecimal {
    bool negative = false;
    std::int64_t scaled = 0;  // value * 10^places
};

// Parses a plain signed decimal into an integer scaled by 10^places.
// Digits beyond `places` must be zero.
ParsedDecimal parse_decimal(std::string_view text, int places, std::string_view what) {
    ParsedDecimal out;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        out.negative = text[i] == '-';
        ++i;
    }
    bool any_digit = false;
    std::int64_t value = 0;
    for (; i < text.size() && text[i] != '.'; ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument(std::string(what) + ": bad character in '" + std::string(text) + "'");
        value = value * 10 + (text[i] - '0');
        any_digit = true;
        if (value > (INT64_MAX >> 21))
            throw std::invalid_argument(std::string(what) + ": overflow in '" + std::string(text) + "'");
    }
    int frac_seen = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9')
                throw std::invalid_argument(std::string(what) + ": bad character in '" + std::string(text) + "'");
            any_digit = true;
            if (frac_seen < places) {
                value = value * 10 + (text[i] - '0');
                ++frac_seen;
            } else if (text[i] != '0') {
                throw std::invalid_argument(std::string(what) + ": more than " + std::to_string(places) +
                                            " decimal places in '" + std::string(text) + "'");
            }
        }
    }
    if (!any_digit)
        throw std::invalid_argument(std::string(what) + ": empty number in '" + std::string(text) + "'");
    for (; frac_seen < places; ++frac_seen) value *= 10;
    out.scaled = value;
    return out;
}

std::string render_decimal(std::int64_t scaled, std::int64_t scale) {
    std::string out;
    if (scaled < 0) {
        out.push_back('-');
        scaled = -scaled;
    }
    out += std::to_string(scaled / scale);
    std::int64_t frac = scaled % scale;
    if (frac != 0) {
        std::string digits;
        for (std::int64_t s = scale / 10; s > 0; s /= 10) {
            digits.push_back(static_cast<char>('0' + frac / s));
            frac %= s;
        }
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
        out.push_back('.');
        out += digits;
    }
    return out;
}

}  // namespace

std::int64_t round_div_half_up(__int128 num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("round_div_half_up: denominator must be positive");
    const bool negative = num < 0;
    __int128 mag = negative ? -num : num;
    // Exact ties only exist for even denominators, and den/2 sends them up.
    __int128 q = (mag + den / 2) / den;
    return static_cast<std::int64_t>(negative ? -q : q);
}

Rate Rate::from_string(std::string_view text) {
    ParsedDecimal p = parse_decimal(text, 6, "Rate");
    return Rate(p.negative ? -p.scaled : p.scaled);
}

std::string Rate::to_string() const { return render_decimal(ppm_, kScale); }

Money Money::from_string(std::string_view text) {
    ParsedDecimal p = parse_decimal(text, 4, "Money");
    return Money(p.negative ? -p.scaled : p.scaled);
}

Money Money::from_double_rounded(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("Money: non-finite value");
    return Money(std::llround(value * kScale));
}

std::string Money::to_string() const { return render_decimal(units_, kScale); }

Money Money::times_frac(std::int64_t num, std::int64_t den) const {
    if (den == 0) throw std::invalid_argument("Money: zero denominator");
    __int128 n = static_cast<__int128>(units_) * num;
    if (den < 0) {
        n = -n;
        den = -den;
    }
    return Money(round_div_half_up(n, den));
}

}  // namespace optinsure
