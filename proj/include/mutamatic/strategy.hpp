#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mutamatic/interp.hpp"
#include "mutamatic/mutation.hpp"
#include "mutamatic/program.hpp"
#include "mutamatic/schemata.hpp"

namespace mutamatic {

enum class StrategyKind { Unoptimised, Schemata, ReachableSchemata, SplitStream };

const char* strategy_name(StrategyKind s);
std::optional<StrategyKind> strategy_from_name(std::string_view name);

enum class Outcome { Killed, Survived, TimedOut, Unreachable, Invalid };

const char* outcome_name(Outcome o);

struct Verdict {
    int mutant_id = 0;
    Outcome outcome = Outcome::Survived;
    std::string killing_test;  // first test whose run is Fail/TimedOut
    int executed_tests = 0;    // suite runs (or forks) attributed to this mutant
    std::string note;
};

// Wall time plus deterministic unit counts per phase. Seconds are summed
// over individual operations, so parallel and serial runs report comparable
// values; counts are what tests assert on.
struct PhaseLedger {
    double generate_seconds = 0;
    double detect_seconds = 0;
    double compile_seconds = 0;
    double execute_seconds = 0;
    double fork_seconds = 0;  // split: time driving fork continuations
    int compiles = 0;            // strategy-defined compile units
    long detect_runs = 0;        // instrumented original-suite runs
    long test_executions = 0;    // test runs against an active mutant
    long forks = 0;
    uint64_t detect_steps = 0;
    uint64_t execute_steps = 0;  // semantic steps spent on mutants
    uint64_t guard_steps = 0;    // dispatch overhead during execute
};

struct StrategyOptions {
    StrategyKind strategy = StrategyKind::Unoptimised;
    Encoding encoding = Encoding::TernaryChain;
    std::vector<MutationKind> operators = {MutationKind::ROR, MutationKind::AOR,
                                           MutationKind::LCR};
    bool early_stop = true;
    bool exclude_unreachable = false;  // unoptimised: skip running unreachable mutants
    double timeout_seconds = 10.0;
    uint64_t step_multiplier = 10;
    uint64_t step_floor = 10'000;
    int workers = 0;  // 0: MUTAMATIC_WORKERS env var, else 1
};

struct TestBudget {
    std::string test;
    uint64_t baseline_steps = 0;
    Budget budget;
};

struct StrategyResult {
    StrategyKind strategy = StrategyKind::Unoptimised;
    Encoding encoding = Encoding::TernaryChain;
    std::vector<Mutant> mutants;   // every generated mutant, id order
    MutantCensus census;
    std::vector<Verdict> verdicts;  // considered mutants only, id order
    PhaseLedger phases;
    std::vector<TestBudget> budgets;  // suite order
    // Valid mutant id -> names of tests reaching it, suite order. Filled by
    // every strategy; split-stream derives it from fork coverage.
    std::map<int, std::vector<std::string>> reach_tests;
    std::vector<std::string> diagnostics;
    int tests_total = 0;
    double pre_gate_seconds = 0;
};

// Runs one strategy end to end on a compiled unit. Throws
// EngineError(PreGateFailed) when the unmutated suite does not pass, and
// EngineError(ConfigError) for unusable option combinations
// (split-stream requires the ternary encoding).
StrategyResult run_strategy(const ProgramUnit& unit, const StrategyOptions& opts);

struct Score {
    int killed = 0;
    int survived = 0;
    int timed_out = 0;
    int unreachable = 0;
    int invalid = 0;
    int valid = 0;
    double value = 0;
};

// killed / valid, with timed-out mutants counted into the numerator when
// the flag is set. Throws EngineError(EmptyDenominator) when no mutant is
// valid.
Score mutation_score(const StrategyResult& result, bool timed_out_as_killed);

}  // namespace mutamatic
