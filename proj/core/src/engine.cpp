#include "optinsure/engine.hpp"

#include "json_util.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace optinsure {

using jsonio::ordered_json;

namespace {

ordered_json log_record(std::int64_t seq, const char* command, ordered_json payload) {
    return {{"seq", seq}, {"command", command}, {"payload", std::move(payload)}};
}

ProposalSide side_from_string(const std::string& s) {
    if (s == "call") return ProposalSide::CallSide;
    if (s == "put") return ProposalSide::PutSide;
    throw std::invalid_argument("proposal side must be 'call' or 'put', got '" + s + "'");
}

}  // namespace

Engine::Engine(InsuranceTerms terms) : terms_(terms) {
    terms_.validate();
    ordered_json payload = jsonio::terms_to_json(terms_);
    payload["schema_version"] = 1;
    append_log(log_record(0, "configure", payload).dump());
}

void Engine::open_position(const OptionPosition& position) {
    position.validate();
    if (position.exercised)
        throw std::invalid_argument("open_position: '" + position.id + "' is already exercised");
    registry_.open(position);
    const Money total = position.premium_paid_per_share.scaled_by(position.shares);
    if (total > Money{})
        ledger_.record(position.open_time, position.owner, kExchangeEntity, total,
                       CashFlowReason::OptionPremium);
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "open_position",
                          jsonio::position_to_json(position))
                   .dump());
}

void Engine::close_position(const std::string& position_id, Money price_per_share, Date on) {
    if (price_per_share.is_negative())
        throw std::invalid_argument("close_position: negative price");
    const auto& record = registry_.get(position_id);
    if (record.position.exercised)
        throw ContractException(ContractError::PositionExercised, "position '" + position_id + "'");
    registry_.close(position_id, on);
    waiting_.erase(position_id);
    const Money total = price_per_share.scaled_by(record.position.shares);
    if (total > Money{})
        ledger_.record(on, kExchangeEntity, record.position.owner, total,
                       CashFlowReason::OptionPremium);
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "close_position",
                          {{"position", position_id},
                           {"price_per_share", price_per_share.to_string()},
                           {"date", on.to_string()}})
                   .dump());
}

void Engine::exercise(const std::string& position_id, Money spot, Date on) {
    const auto& record = registry_.get(position_id);
    if (record.position.exercised)
        throw ContractException(ContractError::PositionExercised, "position '" + position_id + "'");
    if (record.closed_on)
        throw ContractException(ContractError::PositionClosed, "position '" + position_id + "'");
    const Money payoff = exercise_payoff(record.position.spec, spot);
    registry_.mark_exercised(position_id);
    waiting_.erase(position_id);
    const Money total = payoff.scaled_by(record.position.shares);
    if (total > Money{})
        ledger_.record(on, kExchangeEntity, record.position.owner, total,
                       CashFlowReason::ExercisePayoff);
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "exercise",
                          {{"position", position_id},
                           {"spot", spot.to_string()},
                           {"date", on.to_string()}})
                   .dump());
}

void Engine::request_insurance(const std::string& position_id, Date on) {
    if (!registry_.exists(position_id))
        throw ContractException(ContractError::UnknownPosition, "position '" + position_id + "'");
    if (!registry_.eligible_for_insurance(position_id) || position_pending(position_id))
        throw ContractException(ContractError::DuplicateInsurance,
                                "position '" + position_id + "' is not insurable");
    if (!waiting_.insert(position_id).second)
        throw std::invalid_argument("request_insurance: '" + position_id + "' already waiting");
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "request_insurance",
                          {{"position", position_id}, {"date", on.to_string()}})
                   .dump());
}

MatchingReport Engine::run_matching(Date on) {
    // Partition the waiting list by (symbol, expiry); map order keeps the
    // whole run deterministic.
    std::map<std::pair<std::string, Date>, std::vector<std::string>> groups;
    for (const auto& id : waiting_) {
        const auto& pos = registry_.get(id).position;
        groups[{pos.spec.symbol, pos.spec.expiry}].push_back(id);
    }

    MatchingReport report;
    for (const auto& [key, ids] : groups) {
        std::vector<OptionPosition> positions;
        positions.reserve(ids.size());
        for (const auto& id : ids) positions.push_back(registry_.get(id).position);
        CandidatePool pool = CandidatePool::create(std::move(positions));
        if (pool.calls.empty() || pool.puts.empty()) continue;  // nothing to pair yet

        PoolMatchReport pr;
        pr.symbol = key.first;
        pr.expiry = key.second;
        for (const auto& c : pool.calls) pr.call_ids.push_back(c.id);
        for (const auto& p : pool.puts) pr.put_ids.push_back(p.id);
        pr.matrix = build_ranking_matrix(pool);
        pr.outcome = deferred_acceptance(pool, pr.matrix);
        pr.verification = verify_and_modify(pr.outcome.pairs, terms_);

        for (const auto& pair : pr.verification.accepted) {
            std::string pid = "P-" + std::to_string(next_proposal_++);
            proposals_.emplace(pid, make_proposal(pid, pair, registry_, terms_));
            waiting_.erase(pair.call.id);
            waiting_.erase(pair.put.id);
            pr.proposal_ids.push_back(std::move(pid));
        }
        report.pools.push_back(std::move(pr));
    }
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "run_matching",
                          {{"date", on.to_string()}})
                   .dump());
    return report;
}

bool Engine::position_pending(const std::string& position_id) const {
    for (const auto& [id, p] : proposals_)
        if (p.pair.call.id == position_id || p.pair.put.id == position_id) return true;
    return false;
}

std::string Engine::propose(const std::string& call_position, const std::string& put_position,
                            Date on) {
    for (const auto& id : {call_position, put_position}) {
        if (!registry_.exists(id))
            throw ContractException(ContractError::UnknownPosition, "position '" + id + "'");
        if (position_pending(id))
            throw ContractException(ContractError::DuplicateInsurance,
                                    "position '" + id + "' already has a pending proposal");
    }
    MatchPair pair = make_match_pair(registry_.get(call_position).position,
                                     registry_.get(put_position).position);
    std::string pid = "P-" + std::to_string(next_proposal_);
    ContractProposal proposal = make_proposal(pid, pair, registry_, terms_);
    ++next_proposal_;
    proposals_.emplace(pid, std::move(proposal));
    waiting_.erase(call_position);
    waiting_.erase(put_position);
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "propose",
                          {{"call_position", call_position},
                           {"put_position", put_position},
                           {"date", on.to_string()}})
                   .dump());
    return pid;
}

void Engine::apply_issue_if_ready(const std::string& proposal_id, Date on) {
    ContractProposal& proposal = proposals_.at(proposal_id);
    if (proposal.call_state == AcceptanceState::Rejected ||
        proposal.put_state == AcceptanceState::Rejected) {
        // Either side refusing sends both positions back to the waiting list.
        waiting_.insert(proposal.pair.call.id);
        waiting_.insert(proposal.pair.put.id);
        proposals_.erase(proposal_id);
        return;
    }
    if (proposal.call_state != AcceptanceState::Accepted ||
        proposal.put_state != AcceptanceState::Accepted)
        return;

    std::string call_id = "IC-" + std::to_string(next_contract_++);
    std::string put_id = "IC-" + std::to_string(next_contract_++);
    IssuedPair issued =
        issue_accepted(proposal, call_id, put_id, registry_, ledger_, terms_, on);
    contracts_.emplace(call_id, std::move(issued.call_side));
    contracts_.emplace(put_id, std::move(issued.put_side));
    proposals_.erase(proposal_id);
}

void Engine::respond(const std::string& proposal_id, ProposalSide side, bool accept, Date on) {
    auto it = proposals_.find(proposal_id);
    if (it == proposals_.end())
        throw std::invalid_argument("respond: unknown proposal '" + proposal_id + "'");
    AcceptanceState& state =
        side == ProposalSide::CallSide ? it->second.call_state : it->second.put_state;
    if (state != AcceptanceState::Pending)
        throw std::invalid_argument("respond: side already responded on '" + proposal_id + "'");

    // When this answer would complete the acceptance, re-run the
    // examination first so a failed issuance cannot land in the log.
    const AcceptanceState& other =
        side == ProposalSide::CallSide ? it->second.put_state : it->second.call_state;
    if (accept && other == AcceptanceState::Accepted) {
        for (const auto* pos : {&it->second.pair.call, &it->second.pair.put}) {
            const auto& record = registry_.get(pos->id);
            if (record.position.exercised)
                throw ContractException(ContractError::PositionExercised, "position '" + pos->id + "'");
            if (record.closed_on)
                throw ContractException(ContractError::PositionClosed, "position '" + pos->id + "'");
            if (record.insured_by)
                throw ContractException(ContractError::DuplicateInsurance,
                                        "position '" + pos->id + "' already insured");
        }
    }

    state = accept ? AcceptanceState::Accepted : AcceptanceState::Rejected;
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "respond",
                          {{"proposal", proposal_id},
                           {"side", side == ProposalSide::CallSide ? "call" : "put"},
                           {"accept", accept},
                           {"date", on.to_string()}})
                   .dump());
    apply_issue_if_ready(proposal_id, on);
}

TransferFees Engine::trade(const TransferOrder& order) {
    TransferFees fees = execute_transfer(order, terms_, contracts_, ledger_);
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "trade",
                          {{"contract", order.contract_id},
                           {"seller", order.seller},
                           {"buyer", order.buyer},
                           {"price_per_share", order.price_per_share.to_string()},
                           {"date", order.time.to_string()}})
                   .dump());
    return fees;
}

std::vector<SettlementOutcome> Engine::settle_all(Money spot, Date on) {
    std::vector<SettlementOutcome> outcomes;
    for (auto& [id, contract] : contracts_) {
        if (contract.status != ContractStatus::Active) continue;
        if (contract.underlying.expiry != on) continue;
        outcomes.push_back(settle(contract, spot, on, registry_, ledger_));
    }
    append_log(log_record(static_cast<std::int64_t>(log_.size()), "settle_all",
                          {{"spot", spot.to_string()}, {"date", on.to_string()}})
                   .dump());
    return outcomes;
}

std::string Engine::state_dump() const {
    ordered_json state;
    state["schema_version"] = 1;
    state["terms"] = jsonio::terms_to_json(terms_);
    state["next_proposal"] = next_proposal_;
    state["next_contract"] = next_contract_;
    state["waiting"] = waiting_list();

    ordered_json positions = ordered_json::array();
    for (const auto& [id, record] : registry_.records()) {
        ordered_json r = jsonio::position_to_json(record.position);
        r["closed_on"] = record.closed_on ? ordered_json(record.closed_on->to_string()) : nullptr;
        r["insured_by"] = record.insured_by ? ordered_json(*record.insured_by) : nullptr;
        r["claim_used"] = record.claim_used;
        positions.push_back(std::move(r));
    }
    state["positions"] = std::move(positions);

    ordered_json proposals = ordered_json::array();
    for (const auto& [id, p] : proposals_)
        proposals.push_back({{"id", id},
                             {"call_position", p.pair.call.id},
                             {"put_position", p.pair.put.id},
                             {"covered_shares", p.covered_shares},
                             {"call_premium_per_share", p.call_premium_per_share.to_string()},
                             {"put_premium_per_share", p.put_premium_per_share.to_string()},
                             {"call_state", to_string(p.call_state)},
                             {"put_state", to_string(p.put_state)}});
    state["proposals"] = std::move(proposals);

    ordered_json contracts = ordered_json::array();
    for (const auto& [id, c] : contracts_)
        contracts.push_back({{"id", id},
                             {"pair_id", c.pair_id},
                             {"symbol", c.underlying.symbol},
                             {"kind", to_string(c.underlying.kind)},
                             {"strike", c.underlying.strike.to_string()},
                             {"expiry", c.underlying.expiry.to_string()},
                             {"shares", c.shares},
                             {"premium_paid_per_share", c.premium_paid_per_share.to_string()},
                             {"gross_reimbursement_per_share",
                              c.gross_reimbursement_per_share.to_string()},
                             {"service_charge", c.service_charge.to_string()},
                             {"holder", c.holder},
                             {"status", to_string(c.status)}});
    state["contracts"] = std::move(contracts);

    ordered_json entries = ordered_json::array();
    for (const auto& e : ledger_.entries())
        entries.push_back({{"time", e.time.to_string()},
                           {"debtor", e.debtor},
                           {"creditor", e.creditor},
                           {"amount", e.amount.to_string()},
                           {"reason", to_string(e.reason)}});
    state["ledger"] = std::move(entries);
    return state.dump(2);
}

void Engine::write_log(std::ostream& os) const {
    for (const auto& line : log_) os << line << '\n';
}

Engine Engine::replay_lines(const std::vector<std::string>& lines) {
    if (lines.empty()) throw std::invalid_argument("replay: empty event log");

    ordered_json first = ordered_json::parse(lines.front());
    if (jsonio::get_string(first, "command") != "configure")
        throw std::invalid_argument("replay: log must start with a configure record");
    Engine engine(jsonio::terms_from_json(jsonio::field(first, "payload")));

    for (std::size_t i = 1; i < lines.size(); ++i) {
        ordered_json record = ordered_json::parse(lines[i]);
        const std::string command = jsonio::get_string(record, "command");
        const ordered_json& payload = jsonio::field(record, "payload");
        // Re-dispatching through the public commands re-appends each line;
        // drop the duplicate afterwards and keep the original bytes.
        const std::size_t before = engine.log_.size();
        if (command == "open_position") {
            engine.open_position(jsonio::position_from_json(payload));
        } else if (command == "close_position") {
            engine.close_position(jsonio::get_string(payload, "position"),
                                  jsonio::get_money(payload, "price_per_share"),
                                  jsonio::get_date(payload, "date"));
        } else if (command == "exercise") {
            engine.exercise(jsonio::get_string(payload, "position"),
                            jsonio::get_money(payload, "spot"), jsonio::get_date(payload, "date"));
        } else if (command == "request_insurance") {
            engine.request_insurance(jsonio::get_string(payload, "position"),
                                     jsonio::get_date(payload, "date"));
        } else if (command == "run_matching") {
            engine.run_matching(jsonio::get_date(payload, "date"));
        } else if (command == "propose") {
            engine.propose(jsonio::get_string(payload, "call_position"),
                           jsonio::get_string(payload, "put_position"),
                           jsonio::get_date(payload, "date"));
        } else if (command == "respond") {
            engine.respond(jsonio::get_string(payload, "proposal"),
                           side_from_string(jsonio::get_string(payload, "side")),
                           jsonio::get_bool(payload, "accept"), jsonio::get_date(payload, "date"));
        } else if (command == "trade") {
            engine.trade({jsonio::get_string(payload, "contract"),
                          jsonio::get_string(payload, "seller"),
                          jsonio::get_string(payload, "buyer"),
                          jsonio::get_money(payload, "price_per_share"),
                          jsonio::get_date(payload, "date")});
        } else if (command == "settle_all") {
            engine.settle_all(jsonio::get_money(payload, "spot"),
                              jsonio::get_date(payload, "date"));
        } else {
            throw std::invalid_argument("replay: unknown command '" + command + "'");
        }
        engine.log_.resize(before);
        engine.log_.push_back(lines[i]);
    }
    return engine;
}

Engine Engine::replay(std::istream& is) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) lines.push_back(line);
    return replay_lines(lines);
}

}  // namespace optinsure
