#include "mutamatic/strategy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>
#include <thread>

#include "mutamatic/errors.hpp"

namespace mutamatic {

const char* strategy_name(StrategyKind s) {
    switch (s) {
        case StrategyKind::Unoptimised: return "unoptimised";
        case StrategyKind::Schemata: return "schemata";
        case StrategyKind::ReachableSchemata: return "reachable_schemata";
        case StrategyKind::SplitStream: return "split_stream";
    }
    return "?";
}

std::optional<StrategyKind> strategy_from_name(std::string_view name) {
    if (name == "unoptimised") return StrategyKind::Unoptimised;
    if (name == "schemata") return StrategyKind::Schemata;
    if (name == "reachable_schemata" || name == "reachable") return StrategyKind::ReachableSchemata;
    if (name == "split_stream" || name == "split") return StrategyKind::SplitStream;
    return std::nullopt;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Killed: return "killed";
        case Outcome::Survived: return "survived";
        case Outcome::TimedOut: return "timed_out";
        case Outcome::Unreachable: return "unreachable";
        case Outcome::Invalid: return "invalid";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double lap(Clock::time_point& t0) {
    Clock::time_point t1 = Clock::now();
    double s = std::chrono::duration<double>(t1 - t0).count();
    t0 = t1;
    return s;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MUTAMATIC_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

// Runs the unmutated suite. Every test must pass; the per-test budgets for
// all later mutant runs are derived from the measured baseline step counts.
std::vector<TestBudget> pre_gate(const ProgramUnit& unit, const StrategyOptions& opts,
                                 double& seconds) {
    Clock::time_point t0 = Clock::now();
    std::vector<TestBudget> budgets;
    std::string failures;
    for (const TestCase& t : unit.tests) {
        ExecSpec spec;
        spec.unit = &unit;
        spec.test = &t;
        spec.budget.max_steps = std::numeric_limits<uint64_t>::max() / 2;
        spec.budget.max_seconds = opts.timeout_seconds;
        TimedRun run = run_test(spec);
        if (run.result.status != RunStatus::Pass) {
            failures += "\n  " + t.name + ": " + run_status_name(run.result.status);
            if (!run.result.message.empty()) failures += " (" + run.result.message + ")";
            continue;
        }
        TestBudget b;
        b.test = t.name;
        b.baseline_steps = run.result.steps;
        b.budget.max_steps = std::max(opts.step_multiplier * run.result.steps, opts.step_floor);
        b.budget.max_seconds = opts.timeout_seconds;
        budgets.push_back(std::move(b));
    }
    seconds = lap(t0);
    if (!failures.empty())
        throw EngineError(ErrorKind::PreGateFailed,
                          "original test suite does not pass:" + failures);
    return budgets;
}

// One suite scan against an active mutant. The first non-passing test fixes
// the outcome; with early stop the scan ends there.
struct SuiteDigest {
    Outcome outcome = Outcome::Survived;
    std::string first_bad_test;
    int executed = 0;
    double seconds = 0;
    uint64_t steps = 0;
    uint64_t guard_steps = 0;
};

template <typename RunFn>
SuiteDigest scan_suite(const std::vector<const TestCase*>& tests,
                       const std::vector<const Budget*>& budgets, bool early_stop, RunFn&& fn) {
    SuiteDigest d;
    for (size_t i = 0; i < tests.size(); ++i) {
        TimedRun r = fn(*tests[i], *budgets[i]);
        ++d.executed;
        d.seconds += r.seconds;
        d.steps += r.result.steps;
        d.guard_steps += r.result.guard_steps;
        if (r.result.status != RunStatus::Pass && d.first_bad_test.empty()) {
            d.first_bad_test = tests[i]->name;
            d.outcome =
                r.result.status == RunStatus::TimedOut ? Outcome::TimedOut : Outcome::Killed;
            if (early_stop) break;
        }
    }
    return d;
}

// Instrumented selector-0 pass over the whole suite: which tests evaluate
// which guard sites.
struct ReachScan {
    std::map<int, std::vector<std::string>> reach_tests;
    std::set<int> reachable;
    double seconds = 0;
    uint64_t steps = 0;
    long runs = 0;
};

ReachScan scan_reach(const SchemataProgram& sp, const std::vector<TestBudget>& budgets) {
    ReachScan scan;
    for (size_t i = 0; i < sp.unit.tests.size(); ++i) {
        const TestCase& t = sp.unit.tests[i];
        ExecSpec spec;
        spec.schemata = &sp;
        spec.selector = 0;
        spec.test = &t;
        spec.budget = budgets[i].budget;
        spec.instrument = true;
        TimedRun r = run_test(spec);
        scan.seconds += r.seconds;
        scan.steps += r.result.steps;
        ++scan.runs;
        for (int id : r.result.reached_mutants) {
            scan.reach_tests[id].push_back(t.name);
            scan.reachable.insert(id);
        }
    }
    return scan;
}

Verdict classified_verdict(const Mutant& m, const SuiteDigest& d, const std::set<int>& reachable,
                           std::string& diagnostic) {
    Verdict v;
    v.mutant_id = m.id;
    v.outcome = d.outcome;
    v.killing_test = d.first_bad_test;
    v.executed_tests = d.executed;
    bool reached = reachable.count(m.id) != 0;
    if (v.outcome == Outcome::Survived && !reached) v.outcome = Outcome::Unreachable;
    if ((v.outcome == Outcome::Killed || v.outcome == Outcome::TimedOut) && !reached)
        diagnostic = "mutant " + std::to_string(m.id) +
                     " was killed by a test outside its reach record";
    return v;
}

// Per-mutant slice of the phase ledger, filled by one worker and merged
// after the pool joins.
struct MutantTask {
    Verdict verdict;
    double compile_seconds = 0;
    double execute_seconds = 0;
    long executed = 0;
    uint64_t steps = 0;
    uint64_t guard_steps = 0;
    std::string diagnostic;
};

void run_unoptimised(const ProgramUnit& unit, const StrategyOptions& opts, StrategyResult& r) {
    // Classification pass: reach records are needed to tell Survived from
    // Unreachable. This is engine bookkeeping, not part of the strategy's
    // own compile/execute cost, so it lands in the detect ledger.
    Clock::time_point t0 = Clock::now();
    SchemataProgram detection = build_schemata(unit, r.mutants, Encoding::TernaryChain);
    r.phases.detect_seconds += lap(t0);
    ReachScan scan = scan_reach(detection, r.budgets);
    r.phases.detect_seconds += scan.seconds;
    r.phases.detect_steps += scan.steps;
    r.phases.detect_runs += scan.runs;
    r.reach_tests = scan.reach_tests;

    std::vector<NamedSource> production, testsrc;
    for (uint32_t f = 0; f < static_cast<uint32_t>(unit.sources.count()); ++f) {
        const SourceFile& sf = unit.sources.file(f);
        bool prod = std::find(unit.production_files.begin(), unit.production_files.end(), f) !=
                    unit.production_files.end();
        (prod ? production : testsrc).push_back({sf.path, sf.text});
    }
    std::map<std::string, std::vector<std::string>> fixtures;
    for (const TestCase& t : unit.tests) fixtures[t.name] = t.fixture;

    std::vector<const Mutant*> considered;
    for (const Mutant& m : r.mutants)
        if (m.validity != Validity::ExcludedConst) considered.push_back(&m);

    std::vector<MutantTask> tasks(considered.size());
    parallel_for(static_cast<int>(considered.size()), resolve_workers(opts.workers), [&](int i) {
        const Mutant& m = *considered[static_cast<size_t>(i)];
        MutantTask& task = tasks[static_cast<size_t>(i)];
        Clock::time_point c0 = Clock::now();
        std::vector<NamedSource> prod = production;
        const std::string& target = unit.sources.file(m.anchor.file).path;
        for (NamedSource& ns : prod)
            if (ns.path == target) ns.text = apply_mutant_text(unit, m, m.anchor.file);
        ProgramUnit mutated = compile_unit(prod, testsrc, fixtures);
        task.compile_seconds = lap(c0);

        if (m.validity == Validity::InvalidType) {
            task.verdict.mutant_id = m.id;
            task.verdict.outcome = Outcome::Invalid;
            if (mutated.ok())
                task.diagnostic = "mutant " + std::to_string(m.id) +
                                  " is labelled invalid but compiled cleanly";
            return;
        }
        if (!mutated.ok()) {
            task.verdict.mutant_id = m.id;
            task.verdict.outcome = Outcome::Invalid;
            task.diagnostic = "mutant " + std::to_string(m.id) +
                              " is labelled valid but failed to compile";
            return;
        }
        if (opts.exclude_unreachable && !scan.reachable.count(m.id)) {
            task.verdict.mutant_id = m.id;
            task.verdict.outcome = Outcome::Unreachable;
            return;
        }
        std::vector<const TestCase*> tests;
        std::vector<const Budget*> budgets;
        for (size_t k = 0; k < mutated.tests.size(); ++k) {
            tests.push_back(&mutated.tests[k]);
            budgets.push_back(&r.budgets[k].budget);
        }
        SuiteDigest d = scan_suite(tests, budgets, opts.early_stop,
                                   [&](const TestCase& t, const Budget& b) {
                                       ExecSpec spec;
                                       spec.unit = &mutated;
                                       spec.test = &t;
                                       spec.budget = b;
                                       return run_test(spec);
                                   });
        task.execute_seconds = d.seconds;
        task.executed = d.executed;
        task.steps = d.steps;
        task.guard_steps = d.guard_steps;
        task.verdict = classified_verdict(m, d, scan.reachable, task.diagnostic);
    });

    for (MutantTask& task : tasks) {
        ++r.phases.compiles;
        r.phases.compile_seconds += task.compile_seconds;
        r.phases.execute_seconds += task.execute_seconds;
        r.phases.test_executions += task.executed;
        r.phases.execute_steps += task.steps;
        r.phases.guard_steps += task.guard_steps;
        r.verdicts.push_back(std::move(task.verdict));
        if (!task.diagnostic.empty()) r.diagnostics.push_back(std::move(task.diagnostic));
    }
}

// Shared by the schemata and reachable-schemata strategies once the test
// selection per mutant is fixed.
void run_selector_suites(const SchemataProgram& sp, const StrategyOptions& opts, StrategyResult& r,
                         const std::set<int>& reachable,
                         const std::function<std::vector<size_t>(const Mutant&)>& select_tests) {
    std::vector<const Mutant*> considered;
    for (const Mutant& m : r.mutants)
        if (m.validity != Validity::ExcludedConst) considered.push_back(&m);

    std::vector<MutantTask> tasks(considered.size());
    parallel_for(static_cast<int>(considered.size()), resolve_workers(opts.workers), [&](int i) {
        const Mutant& m = *considered[static_cast<size_t>(i)];
        MutantTask& task = tasks[static_cast<size_t>(i)];
        task.verdict.mutant_id = m.id;
        if (m.validity == Validity::InvalidType) {
            task.verdict.outcome = Outcome::Invalid;
            return;
        }
        std::vector<size_t> chosen = select_tests(m);
        if (chosen.empty()) {
            task.verdict.outcome = Outcome::Unreachable;
            return;
        }
        std::vector<const TestCase*> tests;
        std::vector<const Budget*> budgets;
        for (size_t k : chosen) {
            tests.push_back(&sp.unit.tests[k]);
            budgets.push_back(&r.budgets[k].budget);
        }
        SuiteDigest d = scan_suite(tests, budgets, opts.early_stop,
                                   [&](const TestCase& t, const Budget& b) {
                                       ExecSpec spec;
                                       spec.schemata = &sp;
                                       spec.selector = m.id;
                                       spec.test = &t;
                                       spec.budget = b;
                                       return run_test(spec);
                                   });
        task.execute_seconds = d.seconds;
        task.executed = d.executed;
        task.steps = d.steps;
        task.guard_steps = d.guard_steps;
        task.verdict = classified_verdict(m, d, reachable, task.diagnostic);
    });

    for (MutantTask& task : tasks) {
        r.phases.execute_seconds += task.execute_seconds;
        r.phases.test_executions += task.executed;
        r.phases.execute_steps += task.steps;
        r.phases.guard_steps += task.guard_steps;
        r.verdicts.push_back(std::move(task.verdict));
        if (!task.diagnostic.empty()) r.diagnostics.push_back(std::move(task.diagnostic));
    }
}

void run_schemata_strategy(const ProgramUnit& unit, const StrategyOptions& opts,
                           StrategyResult& r) {
    Clock::time_point t0 = Clock::now();
    SchemataProgram sp = build_schemata(unit, r.mutants, opts.encoding);
    r.phases.compile_seconds += lap(t0);
    r.phases.compiles = 1;

    // Classification-only reach scan (Survived vs Unreachable labels).
    ReachScan scan = scan_reach(sp, r.budgets);
    r.phases.detect_seconds += scan.seconds;
    r.phases.detect_steps += scan.steps;
    r.phases.detect_runs += scan.runs;
    r.reach_tests = scan.reach_tests;

    // Every valid mutant runs the full suite regardless of reach.
    std::vector<size_t> all;
    for (size_t k = 0; k < sp.unit.tests.size(); ++k) all.push_back(k);
    run_selector_suites(sp, opts, r, scan.reachable, [&](const Mutant&) { return all; });
}

void run_reachable_schemata(const ProgramUnit& unit, const StrategyOptions& opts,
                            StrategyResult& r) {
    // Detection build + instrumented suite pass: this strategy pays for its
    // reach information, so both land in the counted ledgers.
    Clock::time_point t0 = Clock::now();
    SchemataProgram detection = build_schemata(unit, r.mutants, opts.encoding);
    r.phases.compile_seconds += lap(t0);
    ++r.phases.compiles;
    ReachScan scan = scan_reach(detection, r.budgets);
    r.phases.detect_seconds += scan.seconds;
    r.phases.detect_steps += scan.steps;
    r.phases.detect_runs += scan.runs;
    r.reach_tests = scan.reach_tests;

    Clock::time_point t1 = Clock::now();
    SchemataProgram sp = build_schemata(unit, r.mutants, opts.encoding);
    r.phases.compile_seconds += lap(t1);
    ++r.phases.compiles;

    std::map<std::string, size_t> index_of;
    for (size_t k = 0; k < sp.unit.tests.size(); ++k) index_of[sp.unit.tests[k].name] = k;
    run_selector_suites(sp, opts, r, scan.reachable, [&](const Mutant& m) {
        std::vector<size_t> chosen;
        auto it = r.reach_tests.find(m.id);
        if (it != r.reach_tests.end())
            for (const std::string& name : it->second) chosen.push_back(index_of.at(name));
        return chosen;
    });
}

void run_split_stream(const ProgramUnit& unit, const StrategyOptions& opts, StrategyResult& r) {
    Clock::time_point t0 = Clock::now();
    SchemataProgram sp = build_schemata(unit, r.mutants, opts.encoding);
    r.phases.compile_seconds += lap(t0);
    r.phases.compiles = 1;

    std::set<int> resolved;  // killed or timed out; never forked again
    std::map<int, std::vector<std::pair<std::string, ForkRecord>>> records;
    for (size_t i = 0; i < sp.unit.tests.size(); ++i) {
        const TestCase& t = sp.unit.tests[i];
        ExecSpec spec;
        spec.schemata = &sp;
        spec.selector = 0;
        spec.test = &t;
        spec.budget = r.budgets[i].budget;
        spec.split = true;
        if (opts.early_stop) spec.executed = resolved;
        TimedRun run = run_test(spec);
        r.phases.execute_seconds += run.seconds;
        r.phases.execute_steps += run.result.steps;
        r.phases.guard_steps += run.result.guard_steps;
        if (run.result.status != RunStatus::Pass)
            r.diagnostics.push_back("split-stream main run is not passing in test " + t.name);
        for (const ForkRecord& f : run.result.forks) {
            ++r.phases.forks;
            r.phases.execute_steps += f.steps_executed;
            r.phases.fork_seconds += f.seconds;
            records[f.mutant_id].push_back({t.name, f});
            r.reach_tests[f.mutant_id].push_back(t.name);
            if (f.status == RunStatus::InputExhausted)
                r.diagnostics.push_back("split-stream: fixture exhausted for mutant " +
                                        std::to_string(f.mutant_id) + " in test " + t.name);
            else if (opts.early_stop &&
                     (f.status == RunStatus::Fail || f.status == RunStatus::TimedOut))
                resolved.insert(f.mutant_id);
        }
    }

    for (const Mutant& m : r.mutants) {
        if (m.validity == Validity::ExcludedConst) continue;
        Verdict v;
        v.mutant_id = m.id;
        if (m.validity == Validity::InvalidType) {
            v.outcome = Outcome::Invalid;
            r.verdicts.push_back(std::move(v));
            continue;
        }
        auto it = records.find(m.id);
        if (it == records.end()) {
            v.outcome = Outcome::Unreachable;
            r.verdicts.push_back(std::move(v));
            continue;
        }
        v.executed_tests = static_cast<int>(it->second.size());
        for (const auto& [test_name, f] : it->second) {
            if (f.status == RunStatus::Pass) continue;
            if (f.status == RunStatus::InputExhausted) {
                v.note = "fixture exhausted in a fork; result from that test unknown";
                continue;
            }
            v.outcome = f.status == RunStatus::TimedOut ? Outcome::TimedOut : Outcome::Killed;
            v.killing_test = test_name;
            break;
        }
        r.verdicts.push_back(std::move(v));
    }
}

}  // namespace

StrategyResult run_strategy(const ProgramUnit& unit, const StrategyOptions& opts) {
    if (!unit.ok())
        throw EngineError(ErrorKind::ConfigError, "program unit has compile errors");
    if (opts.strategy == StrategyKind::SplitStream && opts.encoding != Encoding::TernaryChain)
        throw EngineError(ErrorKind::ConfigError,
                          "split-stream forks at chain guards and requires the ternary encoding");
    if (opts.step_multiplier == 0)
        throw EngineError(ErrorKind::ConfigError, "step multiplier must be at least 1");

    StrategyResult r;
    r.strategy = opts.strategy;
    r.encoding = opts.encoding;
    Clock::time_point t0 = Clock::now();
    r.mutants = generate_mutants(unit, opts.operators);
    r.census = census_of(r.mutants);
    r.phases.generate_seconds = lap(t0);
    r.budgets = pre_gate(unit, opts, r.pre_gate_seconds);
    r.tests_total = static_cast<int>(unit.tests.size());

    switch (opts.strategy) {
        case StrategyKind::Unoptimised: run_unoptimised(unit, opts, r); break;
        case StrategyKind::Schemata: run_schemata_strategy(unit, opts, r); break;
        case StrategyKind::ReachableSchemata: run_reachable_schemata(unit, opts, r); break;
        case StrategyKind::SplitStream: run_split_stream(unit, opts, r); break;
    }

    std::sort(r.verdicts.begin(), r.verdicts.end(),
              [](const Verdict& a, const Verdict& b) { return a.mutant_id < b.mutant_id; });
    return r;
}

Score mutation_score(const StrategyResult& result, bool timed_out_as_killed) {
    Score s;
    for (const Verdict& v : result.verdicts) {
        switch (v.outcome) {
            case Outcome::Killed: ++s.killed; break;
            case Outcome::Survived: ++s.survived; break;
            case Outcome::TimedOut: ++s.timed_out; break;
            case Outcome::Unreachable: ++s.unreachable; break;
            case Outcome::Invalid: ++s.invalid; break;
        }
    }
    s.valid = s.killed + s.survived + s.timed_out + s.unreachable;
    if (s.valid == 0)
        throw EngineError(ErrorKind::EmptyDenominator, "no valid mutants to score");
    int numerator = s.killed + (timed_out_as_killed ? s.timed_out : 0);
    s.value = static_cast<double>(numerator) / static_cast<double>(s.valid);
    return s;
}

}  // namespace mutamatic
