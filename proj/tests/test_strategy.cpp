#include <doctest.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mutamatic/errors.hpp"
#include "mutamatic/program.hpp"
#include "mutamatic/strategy.hpp"

using namespace mutamatic;

namespace {

// Shaped so the generated mutants cover every outcome class: plain kills,
// a surviving equivalent mutant (i != n loop bound), infinite-loop
// timeouts from the i + 1 increment, unreachable mutants in the uncalled
// helper, and an invalid float % float candidate.
const char* kLib = R"(int sumTo(int n) {
    int acc = 0;
    int i = 0;
    while (i < n) {
        acc = acc + i;
        i = i + 1;
    }
    return acc;
}

int deadHelper(int x) {
    return x * 2;
}

float half(float v) {
    return v / 2.0;
}
)";

const char* kTests = R"(test sums {
    assert(sumTo(4) == 6);
    assert(sumTo(0) == 0);
}

test sumsAgain {
    assert(sumTo(3) == 3);
}

test halving {
    assert(half(5.0) == 2.5);
}
)";

ProgramUnit make_unit() {
    return compile_unit({{"lib.mc", kLib}}, {{"lib_test.mc", kTests}});
}

StrategyOptions options_for(StrategyKind strategy, Encoding enc = Encoding::TernaryChain) {
    StrategyOptions opts;
    opts.strategy = strategy;
    opts.encoding = enc;
    return opts;
}

std::map<int, std::pair<Outcome, std::string>> verdict_map(const StrategyResult& r) {
    std::map<int, std::pair<Outcome, std::string>> m;
    for (const Verdict& v : r.verdicts) m[v.mutant_id] = {v.outcome, v.killing_test};
    return m;
}

}  // namespace

TEST_CASE("all strategies agree on every verdict") {
    ProgramUnit unit = make_unit();
    REQUIRE(unit.ok());

    StrategyResult unopt = run_strategy(unit, options_for(StrategyKind::Unoptimised));
    StrategyResult schem_t = run_strategy(unit, options_for(StrategyKind::Schemata));
    StrategyResult schem_s =
        run_strategy(unit, options_for(StrategyKind::Schemata, Encoding::SwitchCase));
    StrategyResult reach = run_strategy(unit, options_for(StrategyKind::ReachableSchemata));
    StrategyResult split = run_strategy(unit, options_for(StrategyKind::SplitStream));

    auto expected = verdict_map(unopt);
    CHECK(verdict_map(schem_t) == expected);
    CHECK(verdict_map(schem_s) == expected);
    CHECK(verdict_map(reach) == expected);
    CHECK(verdict_map(split) == expected);

    // The corpus-shaping goal of the sample: every class shows up.
    Score score = mutation_score(unopt, false);
    CHECK(score.killed > 0);
    CHECK(score.survived > 0);
    CHECK(score.timed_out > 0);
    CHECK(score.unreachable > 0);
    CHECK(score.invalid > 0);

    // Accounting identities.
    CHECK(score.valid == score.killed + score.survived + score.timed_out + score.unreachable);
    CHECK(unopt.census.considered == score.valid + score.invalid);
    CHECK(static_cast<int>(unopt.verdicts.size()) == unopt.census.considered);

    // Compile-count structure.
    CHECK(unopt.phases.compiles == unopt.census.considered);
    CHECK(schem_t.phases.compiles == 1);
    CHECK(schem_s.phases.compiles == 1);
    CHECK(reach.phases.compiles == 2);
    CHECK(split.phases.compiles == 1);

    // Work reduction: test selection cuts executions, forking cuts steps.
    CHECK(reach.phases.test_executions <= schem_t.phases.test_executions);
    CHECK(split.phases.execute_steps <= reach.phases.execute_steps);
    CHECK(split.phases.forks > 0);

    // Scoring arithmetic.
    Score with_flag = mutation_score(unopt, true);
    CHECK(with_flag.value ==
          doctest::Approx((score.killed + score.timed_out) / double(score.valid)));
    CHECK(score.value == doctest::Approx(score.killed / double(score.valid)));
}

TEST_CASE("unoptimised runs unreachable mutants unless told not to") {
    ProgramUnit unit = make_unit();
    REQUIRE(unit.ok());

    StrategyResult baseline = run_strategy(unit, options_for(StrategyKind::Unoptimised));
    StrategyOptions skipping = options_for(StrategyKind::Unoptimised);
    skipping.exclude_unreachable = true;
    StrategyResult excluded = run_strategy(unit, skipping);

    CHECK(verdict_map(excluded) == verdict_map(baseline));
    int full_suite = baseline.tests_total;
    for (const Verdict& v : baseline.verdicts)
        if (v.outcome == Outcome::Unreachable) CHECK(v.executed_tests == full_suite);
    for (const Verdict& v : excluded.verdicts)
        if (v.outcome == Outcome::Unreachable) CHECK(v.executed_tests == 0);
    CHECK(excluded.phases.test_executions < baseline.phases.test_executions);
}

TEST_CASE("early stop shortens suites without changing outcomes") {
    ProgramUnit unit = make_unit();
    REQUIRE(unit.ok());

    StrategyOptions exhaustive = options_for(StrategyKind::Schemata);
    exhaustive.early_stop = false;
    StrategyResult full = run_strategy(unit, exhaustive);
    StrategyResult stopped = run_strategy(unit, options_for(StrategyKind::Schemata));

    CHECK(verdict_map(full) == verdict_map(stopped));
    for (const Verdict& v : full.verdicts)
        if (v.outcome != Outcome::Invalid && v.outcome != Outcome::Unreachable)
            CHECK(v.executed_tests == full.tests_total);
    CHECK(stopped.phases.test_executions <= full.phases.test_executions);
}

TEST_CASE("parallel workers see the verdicts serial runs see") {
    ProgramUnit unit = make_unit();
    REQUIRE(unit.ok());

    StrategyOptions serial = options_for(StrategyKind::Unoptimised);
    serial.workers = 1;
    StrategyOptions parallel = options_for(StrategyKind::Unoptimised);
    parallel.workers = 4;
    CHECK(verdict_map(run_strategy(unit, serial)) == verdict_map(run_strategy(unit, parallel)));
}

TEST_CASE("pre-gate rejects a failing suite") {
    ProgramUnit unit = compile_unit({{"lib.mc", "int one() {\n    return 1;\n}\n"}},
                                    {{"t.mc", "test broken {\n    assert(one() == 2);\n}\n"}});
    REQUIRE(unit.ok());
    CHECK_THROWS_AS(run_strategy(unit, options_for(StrategyKind::Unoptimised)), EngineError);
    try {
        run_strategy(unit, options_for(StrategyKind::Unoptimised));
    } catch (const EngineError& e) {
        CHECK(e.kind() == ErrorKind::PreGateFailed);
    }
}

TEST_CASE("split stream rejects the switch encoding") {
    ProgramUnit unit = make_unit();
    REQUIRE(unit.ok());
    CHECK_THROWS_AS(
        run_strategy(unit, options_for(StrategyKind::SplitStream, Encoding::SwitchCase)),
        EngineError);
}

TEST_CASE("scoring needs at least one valid mutant") {
    ProgramUnit unit = compile_unit({{"lib.mc", "int id(int x) {\n    return x;\n}\n"}},
                                    {{"t.mc", "test identity {\n    assert(id(3) == 3);\n}\n"}});
    REQUIRE(unit.ok());
    StrategyResult r = run_strategy(unit, options_for(StrategyKind::Schemata));
    CHECK(r.census.generated == 0);
    CHECK_THROWS_AS(mutation_score(r, false), EngineError);
}
