#include "optinsure/scenario.hpp"

#include "json_util.hpp"

#include <stdexcept>
#include <utility>

namespace optinsure {

using jsonio::ordered_json;

const char* to_string(ScenarioEventType t) {
    switch (t) {
        case ScenarioEventType::OpenPosition: return "open_position";
        case ScenarioEventType::ClosePosition: return "close_position";
        case ScenarioEventType::Exercise: return "exercise";
        case ScenarioEventType::RequestInsurance: return "request_insurance";
        case ScenarioEventType::RunMatching: return "run_matching";
        case ScenarioEventType::Insure: return "insure";
        case ScenarioEventType::Propose: return "propose";
        case ScenarioEventType::Respond: return "respond";
        case ScenarioEventType::Trade: return "trade";
        case ScenarioEventType::SettleAll: return "settle_all";
    }
    return "?";
}

namespace {

ScenarioEventType event_type_from_string(const std::string& s) {
    for (auto t : {ScenarioEventType::OpenPosition, ScenarioEventType::ClosePosition,
                   ScenarioEventType::Exercise, ScenarioEventType::RequestInsurance,
                   ScenarioEventType::RunMatching, ScenarioEventType::Insure,
                   ScenarioEventType::Propose, ScenarioEventType::Respond,
                   ScenarioEventType::Trade, ScenarioEventType::SettleAll})
        if (s == to_string(t)) return t;
    throw std::invalid_argument("unknown scenario event type '" + s + "'");
}

}  // namespace

void ScenarioScript::validate() const {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i].date < events[i - 1].date)
            throw std::invalid_argument("scenario '" + name + "': events out of date order at index " +
                                        std::to_string(i));
}

ScenarioScript script_from_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    jsonio::require_schema(j, 1);
    ScenarioScript script;
    script.name = j.contains("name") ? jsonio::get_string(j, "name") : "script";
    script.initial_spot =
        j.contains("initial_spot") ? jsonio::get_money(j, "initial_spot") : Money{};
    for (const auto& ev : jsonio::field(j, "events")) {
        ScenarioEvent e;
        e.type = event_type_from_string(jsonio::get_string(ev, "type"));
        e.date = jsonio::get_date(ev, "date");
        switch (e.type) {
            case ScenarioEventType::OpenPosition:
                e.position = jsonio::position_from_json(ev);
                e.position->open_time = e.date;
                break;
            case ScenarioEventType::ClosePosition:
                e.position_id = jsonio::get_string(ev, "position");
                e.price_per_share = jsonio::get_money(ev, "price_per_share");
                break;
            case ScenarioEventType::Exercise:
                e.position_id = jsonio::get_string(ev, "position");
                e.spot = jsonio::get_money(ev, "spot");
                break;
            case ScenarioEventType::RequestInsurance:
                e.position_id = jsonio::get_string(ev, "position");
                break;
            case ScenarioEventType::RunMatching:
                break;
            case ScenarioEventType::Insure:
            case ScenarioEventType::Propose:
                e.call_position = jsonio::get_string(ev, "call_position");
                e.put_position = jsonio::get_string(ev, "put_position");
                break;
            case ScenarioEventType::Respond:
                e.proposal_id = jsonio::get_string(ev, "proposal");
                e.side = jsonio::get_string(ev, "side") == "call" ? ProposalSide::CallSide
                                                                  : ProposalSide::PutSide;
                e.accept = jsonio::get_bool(ev, "accept");
                break;
            case ScenarioEventType::Trade:
                e.contract_id = jsonio::get_string(ev, "contract");
                e.seller = jsonio::get_string(ev, "seller");
                e.buyer = jsonio::get_string(ev, "buyer");
                e.price_per_share = jsonio::get_money(ev, "price_per_share");
                break;
            case ScenarioEventType::SettleAll:
                e.spot = jsonio::get_money(ev, "spot");
                break;
        }
        script.events.push_back(std::move(e));
    }
    script.validate();
    return script;
}

std::string script_to_json_text(const ScenarioScript& script) {
    ordered_json j;
    j["schema_version"] = 1;
    j["name"] = script.name;
    j["initial_spot"] = script.initial_spot.to_string();
    ordered_json events = ordered_json::array();
    for (const auto& e : script.events) {
        ordered_json ev;
        ev["type"] = to_string(e.type);
        ev["date"] = e.date.to_string();
        switch (e.type) {
            case ScenarioEventType::OpenPosition: {
                ordered_json pos = jsonio::position_to_json(*e.position);
                pos.erase("open_time");
                pos.erase("exercised");
                ev.update(pos);
                break;
            }
            case ScenarioEventType::ClosePosition:
                ev["position"] = e.position_id;
                ev["price_per_share"] = e.price_per_share.to_string();
                break;
            case ScenarioEventType::Exercise:
                ev["position"] = e.position_id;
                ev["spot"] = e.spot.to_string();
                break;
            case ScenarioEventType::RequestInsurance:
                ev["position"] = e.position_id;
                break;
            case ScenarioEventType::RunMatching:
                break;
            case ScenarioEventType::Insure:
            case ScenarioEventType::Propose:
                ev["call_position"] = e.call_position;
                ev["put_position"] = e.put_position;
                break;
            case ScenarioEventType::Respond:
                ev["proposal"] = e.proposal_id;
                ev["side"] = e.side == ProposalSide::CallSide ? "call" : "put";
                ev["accept"] = e.accept;
                break;
            case ScenarioEventType::Trade:
                ev["contract"] = e.contract_id;
                ev["seller"] = e.seller;
                ev["buyer"] = e.buyer;
                ev["price_per_share"] = e.price_per_share.to_string();
                break;
            case ScenarioEventType::SettleAll:
                ev["spot"] = e.spot.to_string();
                break;
        }
        events.push_back(std::move(ev));
    }
    j["events"] = std::move(events);
    return j.dump(2);
}

ScenarioReport run_scenario(const ScenarioScript& script, const InsuranceTerms& terms) {
    script.validate();
    ScenarioReport report{Engine(terms), {}, Money{}, Money{}, {}};
    Engine& engine = report.engine;

    for (std::size_t i = 0; i < script.events.size(); ++i) {
        const ScenarioEvent& e = script.events[i];
        try {
            switch (e.type) {
                case ScenarioEventType::OpenPosition:
                    engine.open_position(*e.position);
                    break;
                case ScenarioEventType::ClosePosition:
                    engine.close_position(e.position_id, e.price_per_share, e.date);
                    break;
                case ScenarioEventType::Exercise:
                    engine.exercise(e.position_id, e.spot, e.date);
                    break;
                case ScenarioEventType::RequestInsurance:
                    engine.request_insurance(e.position_id, e.date);
                    break;
                case ScenarioEventType::RunMatching:
                    engine.run_matching(e.date);
                    break;
                case ScenarioEventType::Insure: {
                    std::string pid = engine.propose(e.call_position, e.put_position, e.date);
                    engine.respond(pid, ProposalSide::CallSide, true, e.date);
                    engine.respond(pid, ProposalSide::PutSide, true, e.date);
                    break;
                }
                case ScenarioEventType::Propose:
                    engine.propose(e.call_position, e.put_position, e.date);
                    break;
                case ScenarioEventType::Respond:
                    engine.respond(e.proposal_id, e.side, e.accept, e.date);
                    break;
                case ScenarioEventType::Trade:
                    engine.trade({e.contract_id, e.seller, e.buyer, e.price_per_share, e.date});
                    break;
                case ScenarioEventType::SettleAll: {
                    auto outcomes = engine.settle_all(e.spot, e.date);
                    report.settlements.insert(report.settlements.end(), outcomes.begin(),
                                              outcomes.end());
                    break;
                }
            }
        } catch (const std::exception& ex) {
            throw ScriptError(i, ex.what());
        }
    }

    report.pnl_by_entity = engine.ledger().pnl_by_entity();
    report.insurer_pnl = engine.ledger().entity_pnl(kInsurerEntity);
    report.insurer_transfer_fee_income =
        engine.ledger().entity_net_by_reason(kInsurerEntity, CashFlowReason::TransferFee);
    return report;
}

// --- bundled walkthrough scripts ---------------------------------------------

namespace {

constexpr const char* kSymbol = "IKEA";

OptionPosition make_position(std::string id, std::string owner, OptionKind kind, Money strike,
                             Date expiry, std::int64_t shares, Money premium, Date opened) {
    OptionPosition p;
    p.id = std::move(id);
    p.owner = std::move(owner);
    p.spec = {kSymbol, kind, strike, expiry};
    p.shares = shares;
    p.premium_paid_per_share = premium;
    p.open_time = opened;
    return p;
}

ScenarioEvent open_event(OptionPosition position) {
    ScenarioEvent e;
    e.type = ScenarioEventType::OpenPosition;
    e.date = position.open_time;
    e.position = std::move(position);
    return e;
}

ScenarioEvent insure_event(Date date, std::string call_id, std::string put_id) {
    ScenarioEvent e;
    e.type = ScenarioEventType::Insure;
    e.date = date;
    e.call_position = std::move(call_id);
    e.put_position = std::move(put_id);
    return e;
}

ScenarioEvent exercise_event(Date date, std::string position_id, Money spot) {
    ScenarioEvent e;
    e.type = ScenarioEventType::Exercise;
    e.date = date;
    e.position_id = std::move(position_id);
    e.spot = spot;
    return e;
}

ScenarioEvent close_event(Date date, std::string position_id, Money price) {
    ScenarioEvent e;
    e.type = ScenarioEventType::ClosePosition;
    e.date = date;
    e.position_id = std::move(position_id);
    e.price_per_share = price;
    return e;
}

ScenarioEvent trade_event(Date date, std::string contract, std::string seller, std::string buyer,
                          Money price) {
    ScenarioEvent e;
    e.type = ScenarioEventType::Trade;
    e.date = date;
    e.contract_id = std::move(contract);
    e.seller = std::move(seller);
    e.buyer = std::move(buyer);
    e.price_per_share = price;
    return e;
}

ScenarioEvent settle_event(Date date, Money spot) {
    ScenarioEvent e;
    e.type = ScenarioEventType::SettleAll;
    e.date = date;
    e.spot = spot;
    return e;
}

// A single insured pair held to maturity; whoever ends up in the money
// exercises, the out-of-the-money side claims.
ScenarioScript paired_hold_to_maturity(std::string name, std::string call_owner,
                                       std::string put_owner, Money terminal_spot) {
    const Date open = Date::from_ymd(2013, 1, 2);
    const Date expiry = Date::from_ymd(2013, 2, 15);
    const Money strike = Money::from_major(500);

    ScenarioScript s;
    s.name = std::move(name);
    s.initial_spot = Money::from_major(505);

    OptionPosition call = make_position("call-" + call_owner, call_owner, OptionKind::Call, strike,
                                        expiry, 100, Money::from_major(24), open);
    OptionPosition put = make_position("put-" + put_owner, put_owner, OptionKind::Put, strike,
                                       expiry, 100, Money::from_major(15), open);
    s.events.push_back(open_event(call));
    s.events.push_back(open_event(put));
    s.events.push_back(insure_event(open, call.id, put.id));
    if (terminal_spot > strike)
        s.events.push_back(exercise_event(expiry, call.id, terminal_spot));
    else if (terminal_spot < strike)
        s.events.push_back(exercise_event(expiry, put.id, terminal_spot));
    s.events.push_back(settle_event(expiry, terminal_spot));
    return s;
}

}  // namespace

ScenarioScript example1_script(Money terminal_spot) {
    return paired_hold_to_maturity("example1", "A", "B", terminal_spot);
}

ScenarioScript example2_script(Money terminal_spot) {
    // Investors C and D hedge stock legs elsewhere; only the option and
    // insurance legs run through these books.
    return paired_hold_to_maturity("example2", "D", "C", terminal_spot);
}

ScenarioScript example3_script() {
    const Date t0 = Date::from_ymd(2013, 1, 2);
    const Date t1 = Date::from_ymd(2013, 1, 10);
    const Date t2 = Date::from_ymd(2013, 1, 18);
    const Date t3 = Date::from_ymd(2013, 1, 28);
    const Date t4 = Date::from_ymd(2013, 2, 14);
    const Date expiry = Date::from_ymd(2013, 2, 15);
    const Money strike = Money::from_major(500);

    ScenarioScript s;
    s.name = "example3";
    s.initial_spot = Money::from_major(505);

    OptionPosition call_e = make_position("call-E", "E", OptionKind::Call, strike, expiry, 1000,
                                          Money::from_major(24), t0);
    OptionPosition put_f = make_position("put-F", "F", OptionKind::Put, strike, expiry, 1000,
                                         Money::from_major(15), t0);
    OptionPosition put_h = make_position("put-H", "H", OptionKind::Put, strike, expiry, 1000,
                                         Money::from_major(2), t4);

    s.events.push_back(open_event(call_e));
    s.events.push_back(open_event(put_f));
    // Contracts issue in pair order: IC-1 covers the call side (E), IC-2
    // the put side (F).
    s.events.push_back(insure_event(t0, call_e.id, put_f.id));

    // t1: the call side lifts its option at 62 and sells its contract at 2.5.
    s.events.push_back(close_event(t1, call_e.id, Money::from_major(62)));
    s.events.push_back(trade_event(t1, "IC-1", "E", "G", Money::from_string("2.5")));

    // t2: the speculator flips the contract at 8.
    s.events.push_back(trade_event(t2, "IC-1", "G", "S1", Money::from_major(8)));

    // t3: the put side lifts its option at 46.
    s.events.push_back(close_event(t3, put_f.id, Money::from_major(46)));

    // t4: the put-side contract changes hands at 2; the buyer also takes a
    // fresh put position to satisfy the evidence clause.
    s.events.push_back(trade_event(t4, "IC-2", "F", "H", Money::from_major(2)));
    s.events.push_back(open_event(put_h));

    s.events.push_back(settle_event(expiry, Money::from_major(506)));
    return s;
}

}  // namespace optinsure
