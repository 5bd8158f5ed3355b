#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "optinsure/scenario.hpp"

#include <map>
#include <sstream>

using namespace optinsure;
using testutil::M;

namespace {

std::map<std::string, Money> pnl_map(const ScenarioReport& report) {
    return {report.pnl_by_entity.begin(), report.pnl_by_entity.end()};
}

}  // namespace

TEST_CASE("example1 at terminal 555") {
    const ScenarioReport report = run_scenario(example1_script(Money::from_major(555)), {});
    const auto pnl = pnl_map(report);
    CHECK(pnl.at("A") == Money::from_major(2'500));
    CHECK(pnl.at("B") == M("-1357.5"));
    CHECK(report.insurer_pnl == M("457.5"));

    // B's option leg loses the put premium; the insurance leg nets +142.5.
    const Ledger& ledger = report.engine.ledger();
    const Money b_insurance_leg =
        ledger.entity_net_by_reason("B", CashFlowReason::InsurancePremium) +
        ledger.entity_net_by_reason("B", CashFlowReason::Reimbursement) +
        ledger.entity_net_by_reason("B", CashFlowReason::ServiceCharge);
    CHECK(b_insurance_leg == M("142.5"));
    CHECK(ledger.entity_net_by_reason("B", CashFlowReason::OptionPremium) ==
          -Money::from_major(1'500));
}

TEST_CASE("example1 at terminal 455") {
    const ScenarioReport report = run_scenario(example1_script(Money::from_major(455)), {});
    const auto pnl = pnl_map(report);
    CHECK(report.insurer_pnl == Money::from_major(12));

    const Ledger& ledger = report.engine.ledger();
    const Money a_insurance_leg =
        ledger.entity_net_by_reason("A", CashFlowReason::InsurancePremium) +
        ledger.entity_net_by_reason("A", CashFlowReason::Reimbursement) +
        ledger.entity_net_by_reason("A", CashFlowReason::ServiceCharge);
    CHECK(a_insurance_leg == Money::from_major(588));
    CHECK(pnl.at("B") == Money::from_major(4'500) - Money::from_major(1'500) - Money::from_major(600));
}

TEST_CASE("example1 at the exact strike keeps both premiums") {
    const ScenarioReport report = run_scenario(example1_script(Money::from_major(500)), {});
    CHECK(report.insurer_pnl == Money::from_major(1'200));
    for (const auto& outcome : report.settlements)
        CHECK(outcome.disposition == SettleDisposition::ExpiredWorthless);
}

TEST_CASE("example1 expected value per share matches the worked figure") {
    const Money ev = insurer_expected_value(
        {{Rate::from_ppm(500'000),
          run_scenario(example1_script(Money::from_major(555)), {}).insurer_pnl},
         {Rate::from_ppm(500'000),
          run_scenario(example1_script(Money::from_major(455)), {}).insurer_pnl}});
    CHECK(ev == M("234.75"));
    CHECK(ev.divided_by(100) == M("2.3475"));
}

TEST_CASE("example2 runs the insured legs of both hedged portfolios") {
    const ScenarioReport up = run_scenario(example2_script(Money::from_major(555)), {});
    CHECK(up.insurer_pnl == M("457.5"));
    const ScenarioReport down = run_scenario(example2_script(Money::from_major(455)), {});
    CHECK(down.insurer_pnl == Money::from_major(12));
}

TEST_CASE("example3 reproduces every profit statement") {
    const ScenarioReport report = run_scenario(example3_script(), {});
    const auto pnl = pnl_map(report);
    CHECK(pnl.at("E") == Money::from_major(34'475));
    CHECK(pnl.at("F") == Money::from_major(26'980));
    CHECK(pnl.at("G") == Money::from_major(5'395));
    CHECK(pnl.at("H") == Money::from_major(3'405));
    CHECK(report.insurer_transfer_fee_income == Money::from_major(250));

    // The anonymous t2 buyer carries the worthless call-side contract.
    CHECK(pnl.at("S1") == -Money::from_major(8'080));
    CHECK(report.engine.contracts().at("IC-1").status == ContractStatus::ExpiredWorthless);
    CHECK(report.engine.contracts().at("IC-1").holder == "S1");
    CHECK(report.engine.contracts().at("IC-2").status == ContractStatus::SettledReimbursed);
    CHECK(report.engine.contracts().at("IC-2").holder == "H");
}

TEST_CASE("scenario books balance to zero including the exchange sink") {
    for (const ScenarioScript& script :
         {example1_script(Money::from_major(555)), example1_script(Money::from_major(455)),
          example2_script(Money::from_major(500)), example3_script()}) {
        const ScenarioReport report = run_scenario(script, {});
        Money total;
        for (const auto& [entity, pnl] : report.pnl_by_entity) total += pnl;
        CHECK(total == Money{});
    }
}

TEST_CASE("empty script produces an empty book") {
    ScenarioScript script;
    script.name = "empty";
    const ScenarioReport report = run_scenario(script, {});
    CHECK(report.pnl_by_entity.empty());
    CHECK(report.insurer_pnl == Money{});
}

TEST_CASE("scripts round-trip through JSON and replay identically") {
    const ScenarioScript original = example3_script();
    const std::string text = script_to_json_text(original);
    const ScenarioScript parsed = script_from_json_text(text);
    CHECK(script_to_json_text(parsed) == text);

    const ScenarioReport a = run_scenario(original, {});
    const ScenarioReport b = run_scenario(parsed, {});
    CHECK(a.engine.state_dump() == b.engine.state_dump());
}

TEST_CASE("replay is bit-exact across runs and through the event log") {
    const ScenarioReport a = run_scenario(example3_script(), {});
    const ScenarioReport b = run_scenario(example3_script(), {});
    CHECK(a.engine.state_dump() == b.engine.state_dump());

    std::ostringstream log;
    a.engine.write_log(log);
    std::istringstream in(log.str());
    CHECK(Engine::replay(in).state_dump() == a.engine.state_dump());
}

TEST_CASE("script errors carry the offending event index") {
    ScenarioScript script = example3_script();
    // Break the trade at index 4: wrong seller.
    script.events[4].seller = "NOBODY";
    try {
        run_scenario(script, {});
        FAIL("expected ScriptError");
    } catch (const ScriptError& e) {
        CHECK(e.event_index() == 4);
    }
}

TEST_CASE("out-of-order scripts are rejected") {
    ScenarioScript script = example3_script();
    std::swap(script.events.front(), script.events.back());
    CHECK_THROWS_AS(run_scenario(script, {}), std::invalid_argument);
}
