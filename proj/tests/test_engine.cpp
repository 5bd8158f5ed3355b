#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "optinsure/engine.hpp"

#include <sstream>

using namespace optinsure;
using testutil::M;

namespace {

Engine paper_pool_engine() {
    Engine engine;
    const Date open = testutil::default_open();
    for (const auto& pos : testutil::paper_pool().calls) engine.open_position(pos);
    for (const auto& pos : testutil::paper_pool().puts) engine.open_position(pos);
    for (const char* id : {"A", "B", "C", "D", "alpha", "beta", "gamma", "delta"})
        engine.request_insurance(id, open);
    return engine;
}

}  // namespace

TEST_CASE("matching run pairs the waiting list and opens proposals") {
    Engine engine = paper_pool_engine();
    const MatchingReport report = engine.run_matching(testutil::default_open());
    REQUIRE(report.pools.size() == 1);
    const PoolMatchReport& pool = report.pools[0];
    CHECK(pool.outcome.pairs.size() == 4);
    CHECK(pool.verification.w == M("8.631"));
    CHECK(pool.verification.rejected.empty());
    CHECK(pool.proposal_ids.size() == 4);
    CHECK(engine.waiting_list().empty());
    CHECK(engine.proposals().size() == 4);
}

TEST_CASE("acceptance by both sides issues the pair") {
    Engine engine;
    const Date open = testutil::default_open();
    engine.open_position(testutil::make_pos("c1", OptionKind::Call, Money::from_major(500), 100,
                                            Money::from_major(24), "A"));
    engine.open_position(testutil::make_pos("p1", OptionKind::Put, Money::from_major(500), 100,
                                            Money::from_major(15), "B"));
    const std::string pid = engine.propose("c1", "p1", open);
    engine.respond(pid, ProposalSide::CallSide, true, open);
    CHECK(engine.contracts().empty());  // one acceptance is not enough
    engine.respond(pid, ProposalSide::PutSide, true, open);
    REQUIRE(engine.contracts().size() == 2);
    CHECK(engine.contracts().at("IC-1").holder == "A");
    CHECK(engine.contracts().at("IC-2").holder == "B");
    CHECK(engine.ledger().entity_pnl(kInsurerEntity) == Money::from_major(1'200));
    CHECK(engine.proposals().empty());
}

TEST_CASE("a rejection returns both positions to the waiting list without cash") {
    Engine engine;
    const Date open = testutil::default_open();
    engine.open_position(testutil::make_pos("c1", OptionKind::Call, Money::from_major(500), 100,
                                            Money::from_major(24), "A"));
    engine.open_position(testutil::make_pos("p1", OptionKind::Put, Money::from_major(500), 100,
                                            Money::from_major(15), "B"));
    const std::size_t entries_before = engine.ledger().entries().size();
    const std::string pid = engine.propose("c1", "p1", open);
    engine.respond(pid, ProposalSide::CallSide, true, open);
    engine.respond(pid, ProposalSide::PutSide, false, open);
    CHECK(engine.contracts().empty());
    CHECK(engine.proposals().empty());
    CHECK(engine.waiting_list() == std::vector<std::string>{"c1", "p1"});
    CHECK(engine.ledger().entries().size() == entries_before);
}

TEST_CASE("pending proposals lock their positions") {
    Engine engine;
    const Date open = testutil::default_open();
    engine.open_position(testutil::make_pos("c1", OptionKind::Call, Money::from_major(500), 100,
                                            Money::from_major(24), "A"));
    engine.open_position(testutil::make_pos("c2", OptionKind::Call, Money::from_major(500), 100,
                                            Money::from_major(24), "A"));
    engine.open_position(testutil::make_pos("p1", OptionKind::Put, Money::from_major(500), 100,
                                            Money::from_major(15), "B"));
    engine.propose("c1", "p1", open);
    CHECK_THROWS_AS(engine.propose("c2", "p1", open), ContractException);
    CHECK_THROWS_AS(engine.request_insurance("p1", open), ContractException);
}

TEST_CASE("closing a proposed position blocks the final acceptance") {
    Engine engine;
    const Date open = testutil::default_open();
    engine.open_position(testutil::make_pos("c1", OptionKind::Call, Money::from_major(500), 100,
                                            Money::from_major(24), "A"));
    engine.open_position(testutil::make_pos("p1", OptionKind::Put, Money::from_major(500), 100,
                                            Money::from_major(15), "B"));
    const std::string pid = engine.propose("c1", "p1", open);
    engine.respond(pid, ProposalSide::CallSide, true, open);
    engine.close_position("p1", Money::from_major(20), Date::from_ymd(2013, 1, 5));
    CHECK_THROWS_AS(engine.respond(pid, ProposalSide::PutSide, true, Date::from_ymd(2013, 1, 6)),
                    ContractException);
    CHECK(engine.contracts().empty());
}

TEST_CASE("event log replay reconstructs the exact state") {
    Engine engine = paper_pool_engine();
    engine.run_matching(testutil::default_open());
    // Accept two of the four proposals, reject one, leave one pending.
    engine.respond("P-1", ProposalSide::CallSide, true, testutil::default_open());
    engine.respond("P-1", ProposalSide::PutSide, true, testutil::default_open());
    engine.respond("P-2", ProposalSide::CallSide, true, testutil::default_open());
    engine.respond("P-2", ProposalSide::PutSide, true, testutil::default_open());
    engine.respond("P-3", ProposalSide::PutSide, false, testutil::default_open());
    engine.trade({"IC-1", engine.contracts().at("IC-1").holder, "G", M("1.25"),
                  Date::from_ymd(2013, 1, 20)});
    engine.settle_all(Money::from_major(47), testutil::default_expiry());

    std::ostringstream log;
    engine.write_log(log);
    std::istringstream in(log.str());
    const Engine replayed = Engine::replay(in);

    CHECK(replayed.state_dump() == engine.state_dump());
    std::ostringstream log2;
    replayed.write_log(log2);
    CHECK(log2.str() == log.str());
}

TEST_CASE("exercise books the intrinsic payoff and voids the position") {
    Engine engine;
    engine.open_position(testutil::make_pos("c1", OptionKind::Call, Money::from_major(500), 100,
                                            Money::from_major(24), "A"));
    engine.exercise("c1", Money::from_major(555), Date::from_ymd(2013, 2, 15));
    CHECK(engine.ledger().entity_pnl("A") ==
          Money::from_major(5'500) - Money::from_major(2'400));
    CHECK(engine.registry().get("c1").position.exercised);
    CHECK_THROWS_AS(engine.exercise("c1", Money::from_major(555), Date::from_ymd(2013, 2, 15)),
                    ContractException);
}

TEST_CASE("settle_all only touches contracts due that day") {
    Engine engine;
    const Date open = testutil::default_open();
    engine.open_position(testutil::make_pos("c1", OptionKind::Call, Money::from_major(500), 100,
                                            Money::from_major(24), "A"));
    engine.open_position(testutil::make_pos("p1", OptionKind::Put, Money::from_major(500), 100,
                                            Money::from_major(15), "B"));
    const std::string pid = engine.propose("c1", "p1", open);
    engine.respond(pid, ProposalSide::CallSide, true, open);
    engine.respond(pid, ProposalSide::PutSide, true, open);
    CHECK(engine.settle_all(Money::from_major(555), Date::from_ymd(2013, 2, 14)).empty());
    const auto outcomes = engine.settle_all(Money::from_major(555), testutil::default_expiry());
    CHECK(outcomes.size() == 2);
}

TEST_CASE("replay rejects malformed logs") {
    std::istringstream empty("");
    CHECK_THROWS_AS(Engine::replay(empty), std::invalid_argument);
    std::istringstream bad("{\"seq\":0,\"command\":\"open_position\",\"payload\":{}}");
    CHECK_THROWS_AS(Engine::replay(bad), std::invalid_argument);
}
