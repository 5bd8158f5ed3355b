#pragma once
/**
 * @file scenario.hpp
 * @brief Scripted timeline replay: positions open, pairs get insured,
 *        contracts change hands, options exercise, everything settles.
 *
 * Scripts are JSON documents (see script_from_json) or the bundled
 * builders for the three canonical walkthroughs. Replay is deterministic:
 * the same script and terms always produce the same ledger, contract
 * states and event log.
 */

#include "optinsure/engine.hpp"
#include "optinsure/money.hpp"

#include <optional>
#include <string>
#include <vector>

namespace optinsure {

enum class ScenarioEventType {
    OpenPosition,
    ClosePosition,
    Exercise,
    RequestInsurance,
    RunMatching,
    Insure,   // propose + both sides accept
    Propose,
    Respond,
    Trade,
    SettleAll,
};

const char* to_string(ScenarioEventType t);

/// One timeline step. Only the fields relevant to the type are populated;
/// parsing validates per type.
struct ScenarioEvent {
    ScenarioEventType type = ScenarioEventType::OpenPosition;
    Date date;
    std::optional<OptionPosition> position;  // OpenPosition
    std::string position_id;                 // ClosePosition, Exercise, RequestInsurance
    std::string call_position;               // Insure, Propose
    std::string put_position;
    std::string proposal_id;                 // Respond
    ProposalSide side = ProposalSide::CallSide;
    bool accept = true;
    std::string contract_id;                 // Trade
    std::string seller;
    std::string buyer;
    Money price_per_share;                   // ClosePosition, Trade
    Money spot;                              // Exercise, SettleAll
};

struct ScenarioScript {
    std::string name;
    Money initial_spot;
    std::vector<ScenarioEvent> events;

    /// Events must be date-ordered.
    void validate() const;
};

/// Parses a schema_version-1 script document.
ScenarioScript script_from_json_text(const std::string& text);
std::string script_to_json_text(const ScenarioScript& script);

/// Single insured pair held to maturity; the intrinsic winner exercises.
ScenarioScript example1_script(Money terminal_spot);
/// The option-insurance legs of the hedged-portfolio walkthrough (the
/// stock legs are outside this engine's books).
ScenarioScript example2_script(Money terminal_spot);
/// Multi-trader timeline with secondary-market trades; terminal spot 506.
ScenarioScript example3_script();

struct ScenarioReport {
    Engine engine;  // final state, including ledger and event log
    std::vector<std::pair<std::string, Money>> pnl_by_entity;
    Money insurer_pnl;
    Money insurer_transfer_fee_income;
    std::vector<SettlementOutcome> settlements;
};

/// Replays the script on a fresh engine. Failures are rethrown as
/// ScriptError carrying the offending event index.
ScenarioReport run_scenario(const ScenarioScript& script, const InsuranceTerms& terms);

}  // namespace optinsure
