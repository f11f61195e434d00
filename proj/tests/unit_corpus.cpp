#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "symseek/corpus.hpp"

using namespace symseek;

namespace {

std::string data(const char* name) {
    return std::string(SYMSEEK_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("every shipped corpus loads with self-check on") {
    auto kamke = load_corpus(data("kamke.json"), true);
    CHECK(kamke.size() == 37);
    auto nonlocal = load_corpus(data("nonlocal.json"), true);
    CHECK(nonlocal.size() == 7);
    auto osc = load_corpus(data("oscillators.json"), true);
    CHECK(osc.size() == 2);
}

TEST_CASE("entries carry ids, parseable odes and side conditions") {
    auto entries = load_corpus(data("kamke.json"), false);
    std::set<std::string> ids;
    for (auto& e : entries) {
        CHECK(ids.insert(e.id).second);  // unique
        Ode2 ode = e.ode();              // parses
        CHECK(!ode.N.is_zero());
        for (auto& p : ode.params)
            CHECK(std::find(e.params.begin(), e.params.end(), p) != e.params.end());
    }
    // side conditions resolve to parameter symbol codes
    for (auto& e : entries)
        if (!e.side_conditions.empty())
            CHECK(!e.nonzero_codes().empty());
}

TEST_CASE("a corrupted expected sigma fails self-check") {
    std::string text = R"([{
        "id": "bad",
        "phi": "-((y-1)*y')/x",
        "expected_sigma": "(y-3)/x"
    }])";
    CHECK_THROWS_AS(corpus_from_json(text, true), CorpusError);
    // same text loads fine without the check
    auto entries = corpus_from_json(text, false);
    CHECK(entries.size() == 1);
}

TEST_CASE("malformed json is rejected") {
    CHECK_THROWS_AS(corpus_from_json("{not json", false), CorpusError);
    CHECK_THROWS_AS(corpus_from_json(R"([{"phi": "y"}])", false), CorpusError);
    CHECK_THROWS_AS(corpus_from_json(R"([{"id": "x"}])", false), CorpusError);
}

TEST_CASE("empty corpus runs to an empty report") {
    auto reports = run_corpus({}, SearchBudget{}, 2, "*");
    CHECK(reports.empty());
}

TEST_CASE("filter selects by glob and order is stable") {
    auto entries = load_corpus(data("nonlocal.json"), false);
    SearchBudget budget;
    budget.timeout_seconds = 60.0;
    auto reports = run_corpus(entries, budget, 2, "nonlocal-2ode*");
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].id == "nonlocal-2ode1");
    CHECK(reports[1].id == "nonlocal-2ode2");
    for (auto& r : reports) CHECK(r.status == RunStatus::Match);
}

TEST_CASE("report json round-trips") {
    RunReport a;
    a.id = "r1";
    a.status = RunStatus::Match;
    a.strategy = "seed-monomials";
    a.elapsed = 1.25;
    a.sigma = "(y-2)/x";
    a.residual_zero = true;
    RunReport b;
    b.id = "r2";
    b.status = RunStatus::Error;
    b.message = "boom";
    auto back = reports_from_json(reports_to_json({a, b}));
    REQUIRE(back.size() == 2);
    CHECK(back[0].id == "r1");
    CHECK(back[0].status == RunStatus::Match);
    CHECK(back[0].strategy == "seed-monomials");
    CHECK(back[0].sigma == "(y-2)/x");
    CHECK(back[1].status == RunStatus::Error);
    CHECK(back[1].message == "boom");
}

TEST_CASE("run_entry verifies what it reports") {
    auto entries = load_corpus(data("kamke.json"), false);
    const CorpusEntry* e78 = nullptr;
    for (auto& e : entries)
        if (e.id == "kamke-78") e78 = &e;
    REQUIRE(e78);
    SearchBudget budget;
    budget.timeout_seconds = 60.0;
    RunReport r = run_entry(*e78, budget);
    CHECK(r.status == RunStatus::Match);
    CHECK(r.residual_zero);
    CHECK(!r.sigma.empty());
    CHECK(!r.strategy.empty());
}
