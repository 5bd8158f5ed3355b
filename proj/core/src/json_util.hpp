#pragma once
// Internal JSON glue shared by the engine, scenario and file loaders.
// Money and Rate travel as decimal strings so serialized state never
// round-trips through binary floating point.

#include "optinsure/date.hpp"
#include "optinsure/instruments.hpp"
#include "optinsure/money.hpp"
#include "optinsure/terms.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace optinsure::jsonio {

using ordered_json = nlohmann::ordered_json;

inline const ordered_json& field(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument("missing field '" + std::string(key) + "' in " + j.dump());
    return *it;
}

inline std::string get_string(const ordered_json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_string())
        throw std::invalid_argument("field '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

inline std::int64_t get_int(const ordered_json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer())
        throw std::invalid_argument("field '" + std::string(key) + "' must be an integer");
    return v.get<std::int64_t>();
}

inline double get_double(const ordered_json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number())
        throw std::invalid_argument("field '" + std::string(key) + "' must be a number");
    return v.get<double>();
}

inline bool get_bool(const ordered_json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_boolean())
        throw std::invalid_argument("field '" + std::string(key) + "' must be a boolean");
    return v.get<bool>();
}

inline Money get_money(const ordered_json& j, const char* key) {
    return Money::from_string(get_string(j, key));
}

inline Rate get_rate(const ordered_json& j, const char* key) {
    return Rate::from_string(get_string(j, key));
}

inline Date get_date(const ordered_json& j, const char* key) {
    return Date::from_string(get_string(j, key));
}

inline void require_schema(const ordered_json& j, int version) {
    if (get_int(j, "schema_version") != version)
        throw std::invalid_argument("unsupported schema_version, expected " +
                                    std::to_string(version));
}

inline ordered_json position_to_json(const OptionPosition& p) {
    return {{"id", p.id},
            {"owner", p.owner},
            {"symbol", p.spec.symbol},
            {"kind", to_string(p.spec.kind)},
            {"strike", p.spec.strike.to_string()},
            {"expiry", p.spec.expiry.to_string()},
            {"shares", p.shares},
            {"premium_per_share", p.premium_paid_per_share.to_string()},
            {"open_time", p.open_time.to_string()},
            {"exercised", p.exercised}};
}

inline OptionPosition position_from_json(const ordered_json& j) {
    OptionPosition p;
    p.id = get_string(j, "id");
    p.owner = get_string(j, "owner");
    p.spec.symbol = get_string(j, "symbol");
    p.spec.kind = option_kind_from_string(get_string(j, "kind"));
    p.spec.strike = get_money(j, "strike");
    p.spec.expiry = get_date(j, "expiry");
    p.shares = get_int(j, "shares");
    p.premium_paid_per_share = get_money(j, "premium_per_share");
    p.open_time = j.contains("open_time") ? get_date(j, "open_time") : Date{};
    p.exercised = j.contains("exercised") && get_bool(j, "exercised");
    p.validate();
    return p;
}

inline ordered_json terms_to_json(const InsuranceTerms& t) {
    return {{"yardstick", t.yardstick.to_string()},
            {"service_charge", t.service_charge.to_string()},
            {"transfer_fee", t.transfer_fee.to_string()}};
}

inline InsuranceTerms terms_from_json(const ordered_json& j) {
    InsuranceTerms t;
    t.yardstick = get_rate(j, "yardstick");
    t.service_charge = get_rate(j, "service_charge");
    t.transfer_fee = get_rate(j, "transfer_fee");
    t.validate();
    return t;
}

}  // namespace optinsure::jsonio
