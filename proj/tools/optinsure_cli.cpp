// optinsure: pricing, matching, issuance, trading, settlement, scenario
// replay and Monte Carlo risk reports over one event-log state store.
//
// Data goes to stdout, diagnostics to stderr, exit code 0 only on success.
// Given the same inputs, flags and seed, every command emits identical
// bytes, and money fields travel as decimal strings.

#include "optinsure/engine.hpp"
#include "optinsure/instruments.hpp"
#include "optinsure/matching.hpp"
#include "optinsure/montecarlo.hpp"
#include "optinsure/scenario.hpp"
#include "optinsure/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace optinsure;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::int64_t require_int(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer())
        throw std::runtime_error("field '" + std::string(key) + "' missing or not an integer");
    return it->get<std::int64_t>();
}

std::string require_string(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw std::runtime_error("field '" + std::string(key) + "' missing or not a string");
    return it->get<std::string>();
}

double require_number(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number())
        throw std::runtime_error("field '" + std::string(key) + "' missing or not a number");
    return it->get<double>();
}

void require_schema(const ordered_json& j, const std::string& path) {
    if (require_int(j, "schema_version") != 1)
        throw std::runtime_error(path + ": unsupported schema_version");
}

OptionPosition position_from(const ordered_json& j) {
    OptionPosition p;
    p.id = require_string(j, "id");
    p.owner = require_string(j, "owner");
    p.spec.symbol = require_string(j, "symbol");
    p.spec.kind = option_kind_from_string(require_string(j, "kind"));
    p.spec.strike = Money::from_string(require_string(j, "strike"));
    p.spec.expiry = Date::from_string(require_string(j, "expiry"));
    p.shares = require_int(j, "shares");
    p.premium_paid_per_share = Money::from_string(require_string(j, "premium_per_share"));
    p.open_time = j.contains("open_time") ? Date::from_string(require_string(j, "open_time"))
                                          : Date::from_ymd(1970, 1, 1);
    p.validate();
    return p;
}

std::vector<OptionPosition> load_positions(const std::string& path) {
    ordered_json j = ordered_json::parse(read_file(path));
    require_schema(j, path);
    auto it = j.find("positions");
    if (it == j.end() || !it->is_array())
        throw std::runtime_error(path + ": missing 'positions' array");
    std::vector<OptionPosition> positions;
    for (const auto& pj : *it) positions.push_back(position_from(pj));
    return positions;
}

struct GlobalOptions {
    std::string yardstick = "0.5";
    std::string service_charge = "0.01";
    std::string transfer_fee = "0.02";
    std::string data_dir;

    InsuranceTerms terms() const {
        InsuranceTerms t;
        t.yardstick = Rate::from_string(yardstick);
        t.service_charge = Rate::from_string(service_charge);
        t.transfer_fee = Rate::from_string(transfer_fee);
        t.validate();
        return t;
    }

    std::string log_path(const std::string& explicit_path) const {
        if (!explicit_path.empty()) return explicit_path;
        std::string dir = data_dir;
        if (dir.empty()) {
            if (const char* env = std::getenv("OPTINSURE_DATA_DIR")) dir = env;
        }
        if (dir.empty()) throw std::runtime_error("no --log, --data-dir or OPTINSURE_DATA_DIR given");
        return dir + "/events.jsonl";
    }
};

// Loads the engine from an event log if it exists, otherwise starts fresh
// with the configured terms. Returns the number of lines already on disk.
std::size_t load_engine(const std::string& path, const InsuranceTerms& terms, Engine& engine) {
    std::ifstream in(path);
    if (!in) {
        engine = Engine(terms);
        return 0;
    }
    engine = Engine::replay(in);
    return engine.log_lines().size();
}

void append_new_lines(const std::string& path, const Engine& engine, std::size_t known) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    const auto& lines = engine.log_lines();
    for (std::size_t i = known; i < lines.size(); ++i) out << lines[i] << '\n';
}

ordered_json money_map(const std::vector<std::pair<std::string, Money>>& pnl) {
    ordered_json out = ordered_json::object();
    for (const auto& [entity, value] : pnl) out[entity] = value.to_string();
    return out;
}

ordered_json settlement_json(const SettlementOutcome& o) {
    return {{"contract", o.contract_id},
            {"disposition", to_string(o.disposition)},
            {"gross", o.gross_total.to_string()},
            {"service_charge", o.service_charge_total.to_string()},
            {"net", o.net_total.to_string()},
            {"evidence", o.evidence_position ? ordered_json(*o.evidence_position) : nullptr}};
}

ordered_json verification_json(const VerificationResult& v) {
    ordered_json trace = ordered_json::array();
    for (const auto& step : v.trace)
        trace.push_back({{"w", step.w.to_string()},
                         {"d", step.d.to_string()},
                         {"degenerate", step.degenerate},
                         {"rejected", step.rejected_pair ? ordered_json(*step.rejected_pair) : nullptr}});
    ordered_json accepted = ordered_json::array();
    for (const auto& p : v.accepted) accepted.push_back(p.id());
    ordered_json rejected = ordered_json::array();
    for (const auto& p : v.rejected) rejected.push_back(p.id());
    return {{"w", v.w.to_string()},         {"d", v.d.to_string()},
            {"degenerate", v.degenerate},   {"iterations", v.iterations},
            {"trace", std::move(trace)},    {"accepted", std::move(accepted)},
            {"rejected", std::move(rejected)}};
}

// --- subcommands --------------------------------------------------------------

int cmd_price(const std::string& params_path) {
    ordered_json j = ordered_json::parse(read_file(params_path));
    require_schema(j, params_path);
    PricingParams base;
    base.spot = Money::from_string(require_string(j, "spot"));
    base.days_to_expiry = static_cast<int>(require_int(j, "days_to_expiry"));
    base.rate = require_number(j, "rate");
    base.dividend_yield = require_number(j, "dividend_yield");
    base.volatility = require_number(j, "volatility");
    auto strikes = j.find("strikes");
    if (strikes == j.end() || !strikes->is_array() || strikes->empty())
        throw std::runtime_error(params_path + ": missing 'strikes' array");

    std::cout << "strike,call,put,parity_abs_error\n";
    for (const auto& sj : *strikes) {
        PricingParams p = base;
        p.strike = Money::from_string(sj.get<std::string>());
        const Money call = black_scholes_price(p, OptionKind::Call);
        const Money put = black_scholes_price(p, OptionKind::Put);
        double parity_error = 0.0;
        if (p.days_to_expiry > 0) {
            const double t = p.days_to_expiry / 365.0;
            const double forward = p.spot.to_double() * std::exp(-p.dividend_yield * t) -
                                   p.strike.to_double() * std::exp(-p.rate * t);
            parity_error = std::abs(black_scholes_price_raw(p, OptionKind::Call) -
                                    black_scholes_price_raw(p, OptionKind::Put) - forward);
        }
        char err[32];
        std::snprintf(err, sizeof(err), "%.3e", parity_error);
        std::cout << p.strike.to_string() << ',' << call.to_string() << ',' << put.to_string()
                  << ',' << err << '\n';
    }
    return 0;
}

int cmd_match(const std::string& positions_path, const InsuranceTerms& terms) {
    CandidatePool pool = CandidatePool::create(load_positions(positions_path));
    if (pool.calls.empty() || pool.puts.empty())
        throw std::runtime_error(positions_path + ": need at least one call and one put");

    const RankingMatrix matrix = build_ranking_matrix(pool);
    const MatchingOutcome outcome = deferred_acceptance(pool, matrix);
    const VerificationResult verification = verify_and_modify(outcome.pairs, terms);

    ordered_json report;
    report["schema_version"] = 1;
    report["symbol"] = pool.calls.front().spec.symbol;
    report["expiry"] = pool.calls.front().spec.expiry.to_string();
    ordered_json calls = ordered_json::array(), puts = ordered_json::array();
    for (const auto& c : pool.calls) calls.push_back(c.id);
    for (const auto& p : pool.puts) puts.push_back(p.id);
    report["calls"] = std::move(calls);
    report["puts"] = std::move(puts);
    report["ranking_matrix"] = {{"i", matrix.i_rank}, {"j", matrix.j_rank}};

    ordered_json pairs = ordered_json::array();
    for (const auto& pair : verification.accepted)
        pairs.push_back({{"call", pair.call.id},
                         {"put", pair.put.id},
                         {"gap", pair.gap.to_string()},
                         {"scenario", to_string(pair.scenario)},
                         {"covered_shares", pair.covered_shares()}});
    report["pairs"] = std::move(pairs);
    report["verification"] = verification_json(verification);

    ordered_json waiting = ordered_json::array();
    for (const auto& pair : verification.rejected) {
        waiting.push_back(pair.call.id);
        waiting.push_back(pair.put.id);
    }
    for (const auto& pos : outcome.unmatched_calls) waiting.push_back(pos.id);
    for (const auto& pos : outcome.unmatched_puts) waiting.push_back(pos.id);
    report["waiting"] = std::move(waiting);

    std::cout << report.dump(2) << '\n';
    return 0;
}

int cmd_replay(const std::string& source, const std::string& terminal,
               const std::string& log_out, const InsuranceTerms& terms) {
    ScenarioScript script;
    const bool bundled = source == "example1" || source == "example2" || source == "example3";
    if (bundled) {
        Money terminal_spot = Money::from_string(terminal.empty() ? "555" : terminal);
        if (source == "example1")
            script = example1_script(terminal_spot);
        else if (source == "example2")
            script = example2_script(terminal_spot);
        else
            script = example3_script();
    } else {
        if (!terminal.empty())
            throw std::runtime_error("--terminal only applies to the bundled examples");
        script = script_from_json_text(read_file(source));
    }

    const ScenarioReport report = run_scenario(script, terms);

    ordered_json out;
    out["schema_version"] = 1;
    out["scenario"] = script.name;
    out["pnl"] = money_map(report.pnl_by_entity);
    const Ledger& ledger = report.engine.ledger();
    out["insurer"] = {
        {"pnl", report.insurer_pnl.to_string()},
        {"premium_income",
         ledger.entity_net_by_reason(kInsurerEntity, CashFlowReason::InsurancePremium).to_string()},
        {"reimbursement_paid",
         ledger.entity_net_by_reason(kInsurerEntity, CashFlowReason::Reimbursement).to_string()},
        {"service_charge_income",
         ledger.entity_net_by_reason(kInsurerEntity, CashFlowReason::ServiceCharge).to_string()},
        {"transfer_fee_income", report.insurer_transfer_fee_income.to_string()}};
    ordered_json settlements = ordered_json::array();
    for (const auto& o : report.settlements) settlements.push_back(settlement_json(o));
    out["settlements"] = std::move(settlements);
    ordered_json contracts = ordered_json::array();
    for (const auto& [id, c] : report.engine.contracts())
        contracts.push_back({{"id", id},
                             {"holder", c.holder},
                             {"status", to_string(c.status)},
                             {"gross_reimbursement_per_share",
                              c.gross_reimbursement_per_share.to_string()}});
    out["contracts"] = std::move(contracts);
    std::cout << out.dump(2) << '\n';

    if (!log_out.empty()) {
        std::ofstream log(log_out, std::ios::trunc);
        if (!log) throw std::runtime_error("cannot write '" + log_out + "'");
        report.engine.write_log(log);
    }
    return 0;
}

int cmd_simulate(const std::string& positions_path, const PathParams& params_in,
                 const std::string& out_prefix, const InsuranceTerms& terms) {
    CandidatePool pool = CandidatePool::create(load_positions(positions_path));
    if (pool.calls.empty() || pool.puts.empty())
        throw std::runtime_error(positions_path + ": need at least one call and one put");
    const MatchingOutcome outcome = deferred_acceptance(pool, build_ranking_matrix(pool));
    const VerificationResult verification = verify_and_modify(outcome.pairs, terms);

    std::vector<PairEconomics> econ;
    for (const auto& pair : verification.accepted) econ.push_back(pair_economics(pair, terms));

    const RiskProfile profile = insurer_risk_profile(econ, params_in);

    ordered_json summary;
    summary["schema_version"] = 1;
    summary["pairs"] = {{"accepted", verification.accepted.size()},
                        {"rejected", verification.rejected.size()}};
    summary["paths"] = profile.overall.samples;
    summary["min"] = profile.overall.minimum.to_string();
    summary["mean"] = profile.overall.mean.to_string();
    summary["max"] = profile.overall.maximum.to_string();
    ordered_json per_class = ordered_json::array();
    for (const auto& cp : profile.per_class)
        per_class.push_back({{"class", to_string(cp.scenario)},
                             {"pairs", cp.pair_count},
                             {"min", cp.stats.minimum.to_string()},
                             {"mean", cp.stats.mean.to_string()},
                             {"max", cp.stats.maximum.to_string()}});
    summary["per_class"] = std::move(per_class);
    std::cout << summary.dump(2) << '\n';

    std::ofstream csv(out_prefix + ".csv", std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write '" + out_prefix + ".csv'");
    write_risk_profile_csv(csv, profile);
    std::ofstream series(out_prefix + "_series.csv", std::ios::trunc);
    if (!series) throw std::runtime_error("cannot write '" + out_prefix + "_series.csv'");
    write_risk_series_csv(series, profile);
    return 0;
}

int cmd_issue(const GlobalOptions& global, const std::string& log_arg,
              const std::string& positions_path, const std::string& call_id,
              const std::string& put_id, const std::string& date) {
    const std::string path = global.log_path(log_arg);
    Engine engine;
    const std::size_t known = load_engine(path, global.terms(), engine);
    const Date on = Date::from_string(date);

    if (!positions_path.empty()) {
        for (const auto& pos : load_positions(positions_path)) {
            if ((pos.id == call_id || pos.id == put_id) && !engine.registry().exists(pos.id))
                engine.open_position(pos);
        }
    }

    const std::string pid = engine.propose(call_id, put_id, on);
    engine.respond(pid, ProposalSide::CallSide, true, on);
    engine.respond(pid, ProposalSide::PutSide, true, on);
    append_new_lines(path, engine, known);

    ordered_json out;
    out["schema_version"] = 1;
    out["proposal"] = pid;
    ordered_json issued = ordered_json::array();
    for (const auto& [id, c] : engine.contracts())
        if (c.pair_id == call_id + ":" + put_id)
            issued.push_back({{"id", id},
                              {"holder", c.holder},
                              {"premium_per_share", c.premium_paid_per_share.to_string()},
                              {"gross_reimbursement_per_share",
                               c.gross_reimbursement_per_share.to_string()}});
    out["contracts"] = std::move(issued);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_trade(const GlobalOptions& global, const std::string& log_arg, const std::string& contract,
              const std::string& seller, const std::string& buyer, const std::string& price,
              const std::string& date) {
    const std::string path = global.log_path(log_arg);
    Engine engine;
    const std::size_t known = load_engine(path, global.terms(), engine);
    const TransferFees fees = engine.trade(
        {contract, seller, buyer, Money::from_string(price), Date::from_string(date)});
    append_new_lines(path, engine, known);
    ordered_json out;
    out["schema_version"] = 1;
    out["contract"] = contract;
    out["holder"] = holder_of(engine.contracts(), contract);
    out["buyer_fee"] = fees.buyer_fee_total.to_string();
    out["seller_fee"] = fees.seller_fee_total.to_string();
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_settle(const GlobalOptions& global, const std::string& log_arg, const std::string& spot,
               const std::string& date) {
    const std::string path = global.log_path(log_arg);
    Engine engine;
    const std::size_t known = load_engine(path, global.terms(), engine);
    const auto outcomes = engine.settle_all(Money::from_string(spot), Date::from_string(date));
    append_new_lines(path, engine, known);
    ordered_json out;
    out["schema_version"] = 1;
    ordered_json list = ordered_json::array();
    for (const auto& o : outcomes) list.push_back(settlement_json(o));
    out["settlements"] = std::move(list);
    out["insurer_pnl"] = engine.ledger().entity_pnl(kInsurerEntity).to_string();
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_report(const GlobalOptions& global, const std::string& log_arg,
               const std::string& entries_csv, const std::string& pnl_csv) {
    const std::string path = global.log_path(log_arg);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    const Engine engine = Engine::replay(in);

    if (entries_csv.empty() && pnl_csv.empty()) {
        engine.ledger().write_entries_csv(std::cout);
        engine.ledger().write_pnl_csv(std::cout);
        return 0;
    }
    if (!entries_csv.empty()) {
        std::ofstream out(entries_csv, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + entries_csv + "'");
        engine.ledger().write_entries_csv(out);
    }
    if (!pnl_csv.empty()) {
        std::ofstream out(pnl_csv, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + pnl_csv + "'");
        engine.ledger().write_pnl_csv(out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"financial option insurance engine"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--yardstick", global.yardstick, "premium yardstick fraction");
    app.add_option("--service-charge", global.service_charge, "reimbursement service charge");
    app.add_option("--transfer-fee", global.transfer_fee, "secondary-market fee, split half/half");
    app.add_option("--data-dir", global.data_dir, "state directory (or OPTINSURE_DATA_DIR)");

    std::string price_params;
    auto* price = app.add_subcommand("price", "quote call/put premiums for a strike list");
    price->add_option("params", price_params, "pricing parameters JSON")->required();

    std::string match_positions;
    auto* match = app.add_subcommand("match", "rank, pair and verify a position pool");
    match->add_option("positions", match_positions, "positions JSON")->required();

    std::string replay_source, replay_terminal, replay_log_out;
    auto* replay = app.add_subcommand("replay", "replay a bundled example or a script file");
    replay->add_option("script", replay_source, "example1|example2|example3 or a script path")
        ->required();
    replay->add_option("--terminal", replay_terminal, "terminal spot for the bundled examples");
    replay->add_option("--log-out", replay_log_out, "write the resulting event log here");

    std::string sim_positions, sim_out = "risk_profile";
    PathParams sim_params;
    sim_params.s0 = Money::from_major(50);
    sim_params.drift = 0.01;
    sim_params.volatility = 0.4;
    sim_params.horizon_days = 180;
    sim_params.steps = 1;
    sim_params.path_count = 10'000;
    sim_params.seed = 42;
    std::string sim_s0 = "50";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo insurer risk profile for a pool");
    simulate->add_option("positions", sim_positions, "positions JSON")->required();
    simulate->add_option("--s0", sim_s0, "initial spot");
    simulate->add_option("--drift", sim_params.drift, "annualized drift (defaults to the risk-free rate)");
    simulate->add_option("--volatility", sim_params.volatility, "annualized volatility");
    simulate->add_option("--horizon-days", sim_params.horizon_days, "days to the terminal date");
    simulate->add_option("--steps", sim_params.steps, "time steps per path");
    simulate->add_option("--paths", sim_params.path_count, "number of paths");
    simulate->add_option("--seed", sim_params.seed, "RNG seed");
    simulate->add_option("--out", sim_out, "output file prefix");

    std::string issue_log, issue_positions, issue_call, issue_put, issue_date;
    auto* issue = app.add_subcommand("issue", "propose and issue one pair into the event log");
    issue->add_option("--log", issue_log, "event log path");
    issue->add_option("--positions", issue_positions, "positions JSON to import from");
    issue->add_option("--call", issue_call, "call position id")->required();
    issue->add_option("--put", issue_put, "put position id")->required();
    issue->add_option("--date", issue_date, "issue date YYYY-MM-DD")->required();

    std::string trade_log, trade_contract, trade_seller, trade_buyer, trade_price, trade_date;
    auto* trade = app.add_subcommand("trade", "transfer a contract on the secondary market");
    trade->add_option("--log", trade_log, "event log path");
    trade->add_option("--contract", trade_contract, "contract id")->required();
    trade->add_option("--seller", trade_seller, "current holder")->required();
    trade->add_option("--buyer", trade_buyer, "new holder")->required();
    trade->add_option("--price", trade_price, "price per share")->required();
    trade->add_option("--date", trade_date, "trade date YYYY-MM-DD")->required();

    std::string settle_log, settle_spot, settle_date;
    auto* settle = app.add_subcommand("settle", "settle all contracts due on a date");
    settle->add_option("--log", settle_log, "event log path");
    settle->add_option("--spot", settle_spot, "spot at maturity")->required();
    settle->add_option("--date", settle_date, "settlement date YYYY-MM-DD")->required();

    std::string report_log, report_entries_csv, report_pnl_csv;
    auto* report = app.add_subcommand("report", "export the ledger and per-entity P&L as CSV");
    report->add_option("--log", report_log, "event log path");
    report->add_option("--entries-csv", report_entries_csv, "write the entries CSV here");
    report->add_option("--pnl-csv", report_pnl_csv, "write the P&L CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*price) return cmd_price(price_params);
        if (*match) return cmd_match(match_positions, global.terms());
        if (*replay) return cmd_replay(replay_source, replay_terminal, replay_log_out, global.terms());
        if (*simulate) {
            sim_params.s0 = Money::from_string(sim_s0);
            return cmd_simulate(sim_positions, sim_params, sim_out, global.terms());
        }
        if (*issue)
            return cmd_issue(global, issue_log, issue_positions, issue_call, issue_put, issue_date);
        if (*trade)
            return cmd_trade(global, trade_log, trade_contract, trade_seller, trade_buyer,
                             trade_price, trade_date);
        if (*settle) return cmd_settle(global, settle_log, settle_spot, settle_date);
        if (*report) return cmd_report(global, report_log, report_entries_csv, report_pnl_csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
