#pragma once
// Shared shorthand for the test suites.

#include "optinsure/instruments.hpp"
#include "optinsure/matching.hpp"
#include "optinsure/money.hpp"
#include "optinsure/terms.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace testutil {

using namespace optinsure;

inline Money M(const char* text) { return Money::from_string(text); }
inline Rate R(const char* text) { return Rate::from_string(text); }

inline Date default_expiry() { return Date::from_ymd(2013, 2, 15); }
inline Date default_open() { return Date::from_ymd(2013, 1, 2); }

inline OptionPosition make_pos(std::string id, OptionKind kind, Money strike,
                               std::int64_t shares = 1, Money premium = Money::from_major(1),
                               std::string owner = "") {
    OptionPosition p;
    p.owner = owner.empty() ? id : std::move(owner);
    p.id = std::move(id);
    p.spec = {"IKEA", kind, strike, default_expiry()};
    p.shares = shares;
    p.premium_paid_per_share = premium;
    p.open_time = default_open();
    return p;
}

inline OptionPosition call_pos(std::string id, Money strike, std::int64_t shares = 1,
                               Money premium = Money::from_major(1)) {
    return make_pos(std::move(id), OptionKind::Call, strike, shares, premium);
}

inline OptionPosition put_pos(std::string id, Money strike, std::int64_t shares = 1,
                              Money premium = Money::from_major(1)) {
    return make_pos(std::move(id), OptionKind::Put, strike, shares, premium);
}

/// Money uniform in [lo, hi] on the 1e-4 grid.
inline Money random_money(std::mt19937_64& rng, Money lo, Money hi) {
    std::uniform_int_distribution<std::int64_t> dist(lo.units(), hi.units());
    return Money::from_units(dist(rng));
}

/// The paper pool: calls A=60, B=40, C=35, D=55 and puts alpha=50,
/// beta=40, gamma=45, delta=65, premiums from the worked table.
inline CandidatePool paper_pool() {
    std::vector<OptionPosition> positions;
    positions.push_back(call_pos("A", Money::from_major(60), 1, M("2.4")));
    positions.push_back(call_pos("B", Money::from_major(40), 1, M("11.7")));
    positions.push_back(call_pos("C", Money::from_major(35), 1, M("15.7")));
    positions.push_back(call_pos("D", Money::from_major(55), 1, M("3.8")));
    positions.push_back(put_pos("alpha", Money::from_major(50), 1, M("5.4")));
    positions.push_back(put_pos("beta", Money::from_major(40), 1, M("1.5")));
    positions.push_back(put_pos("gamma", Money::from_major(45), 1, M("3.1")));
    positions.push_back(put_pos("delta", Money::from_major(65), 1, M("16.2")));
    return CandidatePool::create(std::move(positions));
}

}  // namespace testutil
