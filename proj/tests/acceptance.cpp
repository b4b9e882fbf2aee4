// End-to-end gate over the bundled corpus. Every strategy configuration
// runs the whole corpus once, then each check below pins one invariant the
// engine advertises. One PASS/FAIL line per check; the exit code is the
// number of failed checks.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mutamatic/corpus.hpp"
#include "mutamatic/costmodel.hpp"
#include "mutamatic/errors.hpp"
#include "mutamatic/interp.hpp"
#include "mutamatic/mutation.hpp"
#include "mutamatic/printer.hpp"
#include "mutamatic/program.hpp"
#include "mutamatic/report.hpp"
#include "mutamatic/schemata.hpp"
#include "mutamatic/strategy.hpp"

namespace {

using namespace mutamatic;

struct EntryRun {
    const CorpusEntry* entry = nullptr;
    ProgramUnit unit;
    StrategyResult unopt;
    StrategyResult schem_tern;
    StrategyResult schem_switch;
    StrategyResult reach;
    StrategyResult split;
};

std::vector<const StrategyResult*> configs(const EntryRun& run) {
    return {&run.unopt, &run.schem_tern, &run.schem_switch, &run.reach, &run.split};
}

StrategyResult run_config(const ProgramUnit& unit, StrategyKind kind, Encoding enc,
                          bool early_stop = true) {
    StrategyOptions opts;
    opts.strategy = kind;
    opts.encoding = enc;
    opts.early_stop = early_stop;
    return run_strategy(unit, opts);
}

std::vector<EntryRun> sweep_corpus(const Corpus& corpus) {
    std::vector<EntryRun> runs;
    runs.reserve(corpus.entries.size());
    for (const CorpusEntry& entry : corpus.entries) {
        EntryRun run;
        run.entry = &entry;
        run.unit = compile_entry(entry);
        run.unopt = run_config(run.unit, StrategyKind::Unoptimised, Encoding::TernaryChain);
        run.schem_tern = run_config(run.unit, StrategyKind::Schemata, Encoding::TernaryChain);
        run.schem_switch = run_config(run.unit, StrategyKind::Schemata, Encoding::SwitchCase);
        run.reach = run_config(run.unit, StrategyKind::ReachableSchemata, Encoding::TernaryChain);
        run.split = run_config(run.unit, StrategyKind::SplitStream, Encoding::TernaryChain);
        runs.push_back(std::move(run));
    }
    return runs;
}

const EntryRun& entry_named(const std::vector<EntryRun>& runs, const std::string& name) {
    for (const EntryRun& run : runs)
        if (run.entry->name == name) return run;
    throw EngineError(ErrorKind::CorpusError, "no corpus entry named " + name);
}

// Outcome plus killing test per mutant id; the shape compared across
// strategies.
std::map<int, std::pair<Outcome, std::string>> verdict_map(const StrategyResult& r) {
    std::map<int, std::pair<Outcome, std::string>> m;
    for (const Verdict& v : r.verdicts) m[v.mutant_id] = {v.outcome, v.killing_test};
    return m;
}

std::string fmt(double v, int digits = 2) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

struct Gate {
    int failures = 0;
    void check(int number, const std::string& label, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS" : "FAIL") << (number < 10 ? "   " : "  ") << number << "  "
                  << label;
        if (!detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << '\n';
        if (!ok) ++failures;
    }
};

// Full report of one sweep, for the byte-identity comparison. Extends the
// per-strategy serialization with the deterministic per-test baselines and
// the reach lists.
Json sweep_report(const std::vector<EntryRun>& runs) {
    Json entries = Json::array();
    for (const EntryRun& run : runs) {
        Json e;
        e["name"] = run.entry->name;
        Json budgets = Json::array();
        for (const TestBudget& b : run.unopt.budgets)
            budgets.push_back({{"test", b.test}, {"baseline_steps", b.baseline_steps}});
        e["budgets"] = std::move(budgets);
        Json reach = Json::object();
        for (const auto& [id, names] : run.unopt.reach_tests) reach[std::to_string(id)] = names;
        e["reach"] = std::move(reach);
        e["unoptimised"] = strategy_result_json(run.unopt);
        e["schemata_ternary"] = strategy_result_json(run.schem_tern);
        e["schemata_switch"] = strategy_result_json(run.schem_switch);
        e["reachable"] = strategy_result_json(run.reach);
        e["split_stream"] = strategy_result_json(run.split);
        entries.push_back(std::move(e));
    }
    Json out;
    out["entries"] = std::move(entries);
    return out;
}

}  // namespace

int main() try {
    const std::string manifest = std::string(MUTAMATIC_SOURCE_DIR) + "/corpus/manifest.json";
    Corpus corpus = load_corpus(manifest);

    auto t0 = std::chrono::steady_clock::now();
    std::vector<EntryRun> runs = sweep_corpus(corpus);
    double sweep_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Gate gate;

    // 1. One verdict per mutant, no matter how the mutants are executed.
    {
        long programs = static_cast<long>(corpus.entries.size());
        long tests = 0;
        long generated = 0;
        std::set<Outcome> classes;
        bool agree = true;
        for (const EntryRun& run : runs) {
            tests += run.unopt.tests_total;
            generated += run.unopt.census.generated;
            auto base = verdict_map(run.unopt);
            for (const StrategyResult* r : configs(run))
                if (verdict_map(*r) != base) agree = false;
            for (const auto& [id, v] : base) classes.insert(v.first);
        }
        bool floors = programs >= 15 && tests >= 60 && generated >= 300;
        bool all_classes = classes.size() == 5;
        bool fast = sweep_seconds < 120.0;
        gate.check(1, "all five configurations agree on every mutant verdict",
                   floors && agree && all_classes && fast,
                   std::to_string(programs) + " programs, " + std::to_string(tests) + " tests, " +
                       std::to_string(generated) + " mutants, sweep " + fmt(sweep_seconds, 1) +
                       "s");
    }

    // 2. The static validity label agrees with actually inserting each
    // mutant into the source and recompiling.
    {
        bool ok = true;
        long checked = 0;
        for (const EntryRun& run : runs) {
            for (const Mutant& m : run.unopt.mutants) {
                if (m.validity == Validity::ExcludedConst) continue;
                ProgramUnit mutated = compile_entry_mutated(*run.entry, run.unit, m);
                if (mutated.ok() != (m.validity == Validity::Valid)) ok = false;
                ++checked;
            }
        }
        gate.check(2, "validity labels match one-at-a-time source insertion", ok,
                   std::to_string(checked) + " insertions compiled");
    }

    // 3. The counting identities behind every reported score.
    {
        bool ok = true;
        for (const EntryRun& run : runs) {
            for (const StrategyResult* r : configs(run)) {
                const MutantCensus& c = r->census;
                if (c.generated != c.considered + c.excluded_const) ok = false;
                if (c.considered != c.valid + c.invalid_type) ok = false;
                Score s = mutation_score(*r, false);
                if (s.killed + s.survived + s.timed_out + s.unreachable != c.valid) ok = false;
                if (s.invalid != c.invalid_type || s.valid != c.valid) ok = false;
                if (s.value != static_cast<double>(s.killed) / c.valid) ok = false;
                Score t = mutation_score(*r, true);
                if (t.value != static_cast<double>(s.killed + s.timed_out) / c.valid) ok = false;
            }
        }
        gate.check(3, "census and score identities hold on every run", ok);
    }

    // 4. Compile counts per strategy: one per considered mutant, a single
    // guarded build, or detection pass plus guarded build.
    {
        bool ok = true;
        for (const EntryRun& run : runs) {
            if (run.unopt.phases.compiles != run.unopt.census.considered) ok = false;
            if (run.schem_tern.phases.compiles != 1) ok = false;
            if (run.schem_switch.phases.compiles != 1) ok = false;
            if (run.reach.phases.compiles != 2) ok = false;
            if (run.split.phases.compiles != 1) ok = false;
        }
        gate.check(4, "compile counts collapse exactly as each strategy promises", ok);
    }

    // 5. Reach-filtered execution runs each mutant against exactly its
    // reaching tests, cut short at the resolving test.
    {
        bool identity = true;
        bool bounded = true;
        long schem_decoup = 0;
        long reach_decoup = 0;
        for (const EntryRun& run : runs) {
            long expected = 0;
            for (const Verdict& v : run.reach.verdicts) {
                if (v.outcome == Outcome::Invalid || v.outcome == Outcome::Unreachable) continue;
                auto it = run.reach.reach_tests.find(v.mutant_id);
                if (it == run.reach.reach_tests.end()) {
                    identity = false;
                    continue;
                }
                const std::vector<std::string>& reaching = it->second;
                long used = static_cast<long>(reaching.size());
                if (v.outcome != Outcome::Survived) {
                    auto hit = std::find(reaching.begin(), reaching.end(), v.killing_test);
                    if (hit == reaching.end()) {
                        identity = false;
                        continue;
                    }
                    used = static_cast<long>(hit - reaching.begin()) + 1;
                }
                if (used != v.executed_tests) identity = false;
                expected += used;
            }
            if (expected != run.reach.phases.test_executions) identity = false;
            if (run.reach.phases.test_executions > run.schem_tern.phases.test_executions)
                bounded = false;
            if (run.entry->name.starts_with("decoup")) {
                schem_decoup += run.schem_tern.phases.test_executions;
                reach_decoup += run.reach.phases.test_executions;
            }
        }
        double ratio =
            reach_decoup > 0 ? static_cast<double>(schem_decoup) / reach_decoup : 0.0;
        gate.check(5, "reach filtering cuts test executions to the reaching prefix",
                   identity && bounded && ratio >= 3.0,
                   "low-coupling entries: " + std::to_string(schem_decoup) + " vs " +
                       std::to_string(reach_decoup) + " runs, " + fmt(ratio) + "x");
    }

    // 6. Forked execution skips the shared prefix work, and no guard site
    // forks twice for the same mutant.
    {
        uint64_t split_steps = 0;
        uint64_t reach_steps = 0;
        uint64_t split_late = 0;
        uint64_t reach_late = 0;
        bool fork_accounting = true;
        bool resolved_state = true;
        for (const EntryRun& run : runs) {
            split_steps += run.split.phases.execute_steps;
            reach_steps += run.reach.phases.execute_steps;
            if (run.entry->name.starts_with("latefork")) {
                split_late += run.split.phases.execute_steps;
                reach_late += run.reach.phases.execute_steps;
            }
            long forks = 0;
            for (const Verdict& v : run.split.verdicts) {
                forks += v.executed_tests;
                if (v.outcome == Outcome::Killed || v.outcome == Outcome::TimedOut) {
                    const auto& reached = run.split.reach_tests.at(v.mutant_id);
                    if (reached.empty() || reached.back() != v.killing_test)
                        resolved_state = false;
                }
            }
            if (forks != run.split.phases.forks) fork_accounting = false;
        }
        bool fork_once = true;
        for (const EntryRun* runp :
             {&entry_named(runs, "latefork1"), &entry_named(runs, "fib"),
              &entry_named(runs, "ternsel")}) {
            const EntryRun& run = *runp;
            SchemataProgram sp =
                build_schemata(run.unit, run.unopt.mutants, Encoding::TernaryChain);
            for (size_t i = 0; i < sp.unit.tests.size(); ++i) {
                ExecSpec spec;
                spec.schemata = &sp;
                spec.selector = 0;
                spec.test = &sp.unit.tests[i];
                spec.budget = run.split.budgets[i].budget;
                spec.split = true;
                RunResult r = run_test(spec).result;
                std::set<int> seen;
                for (const ForkRecord& f : r.forks)
                    if (!seen.insert(f.mutant_id).second) fork_once = false;
            }
        }
        double late_ratio =
            split_late > 0 ? static_cast<double>(reach_late) / split_late : 0.0;
        gate.check(6, "forked runs shed the shared prefix and fork once per mutant",
                   split_steps <= reach_steps && late_ratio >= 1.5 && fork_accounting &&
                       resolved_state && fork_once,
                   "corpus steps " + std::to_string(split_steps) + " vs " +
                       std::to_string(reach_steps) + ", late-cluster " + fmt(late_ratio) + "x");
    }

    // 7. The cost estimators: fixed arithmetic cases, then predictions from
    // measured unit means against measured pipeline totals.
    {
        CostModelInputs a;
        a.t_mutant_generation = 1;
        a.t_compilation = 10;
        a.t_test_suite_execution = 2;
        a.t_schemata_compilation = 12;
        a.t_schemata_test_suite_execution = 2.5;
        a.reachable_mutants = 3;
        a.unreachable_mutants = 1;
        a.invalid_mutants = 1;
        CostModelInputs b;
        b.t_mutant_generation = 1;
        b.t_schemata_compilation = 12;
        b.t_schemata_test_suite_execution = 2.5;
        b.t_split_stream_compilation = 13;
        b.t_split_stream_test_suite_execution = 2.5;
        b.reachable_mutants = 4;
        b.decoupling_factor = 0.25;
        bool worked = estimate_unoptimised(a) == 59.0 && estimate_schemata(a) == 23.0 &&
                      estimate_reachable_schemata(b) == 30.0 &&
                      estimate_split_stream(b) == 15.25;

        // Prediction check, run in the estimators' own regime. None of the
        // formulas model early stopping or budget exhaustion: each prices
        // whole suite passes at one mean rate. So the measurement sweep
        // reruns the timeout-free entries with early stopping off, where
        // every run the ledger averages is a whole suite pass. Entries with
        // mutants that burn their step budget stay out entirely: a budget
        // burn costs an amount no per-suite mean represents. The split
        // estimator prices mutant-attributable work; the stream's own pass
        // is the ordinary suite run, so its measured side is generation,
        // build, and fork time.
        double meas[4] = {0, 0, 0, 0};
        double pred[4] = {0, 0, 0, 0};
        int compared = 0;
        for (const EntryRun& run : runs) {
            bool timeout_free = true;
            for (const Verdict& v : run.unopt.verdicts)
                if (v.outcome == Outcome::TimedOut) timeout_free = false;
            if (!timeout_free) continue;
            ++compared;
            StrategyResult unopt =
                run_config(run.unit, StrategyKind::Unoptimised, Encoding::TernaryChain, false);
            StrategyResult schem =
                run_config(run.unit, StrategyKind::Schemata, Encoding::TernaryChain, false);
            StrategyResult reach = run_config(run.unit, StrategyKind::ReachableSchemata,
                                              Encoding::TernaryChain, false);
            StrategyResult split =
                run_config(run.unit, StrategyKind::SplitStream, Encoding::TernaryChain, false);

            const MutantCensus& c = unopt.census;
            int unreachable = 0;
            for (const Verdict& v : unopt.verdicts)
                if (v.outcome == Outcome::Unreachable) ++unreachable;
            double sch_exec_unit = schem.phases.execute_seconds / c.valid;

            CostModelInputs in;
            in.reachable_mutants = c.valid - unreachable;
            in.unreachable_mutants = unreachable;
            in.invalid_mutants = c.invalid_type;
            in.decoupling_factor = decoupling_factor(reach.reach_tests, reach.tests_total);

            in.t_mutant_generation = unopt.phases.generate_seconds;
            in.t_compilation = unopt.phases.compile_seconds / unopt.phases.compiles;
            in.t_test_suite_execution = unopt.phases.execute_seconds / c.valid;
            pred[0] += estimate_unoptimised(in);
            meas[0] += unopt.phases.generate_seconds + unopt.phases.compile_seconds +
                       unopt.phases.execute_seconds;

            in.t_mutant_generation = schem.phases.generate_seconds;
            in.t_schemata_compilation = schem.phases.compile_seconds;
            in.t_schemata_test_suite_execution = sch_exec_unit;
            pred[1] += estimate_schemata(in);
            meas[1] += schem.phases.generate_seconds + schem.phases.compile_seconds +
                       schem.phases.execute_seconds;

            in.t_mutant_generation = reach.phases.generate_seconds;
            pred[2] += estimate_reachable_schemata(in);
            meas[2] += reach.phases.generate_seconds + reach.phases.compile_seconds +
                       reach.phases.detect_seconds + reach.phases.execute_seconds;

            in.t_mutant_generation = split.phases.generate_seconds;
            in.t_split_stream_compilation = split.phases.compile_seconds;
            in.t_split_stream_test_suite_execution = sch_exec_unit;
            pred[3] += estimate_split_stream(in);
            meas[3] += split.phases.generate_seconds + split.phases.compile_seconds +
                       split.phases.fork_seconds;
        }
        bool predicted = true;
        std::string ratios;
        for (int k = 0; k < 4; ++k) {
            double ratio = pred[k] / meas[k];
            if (!(ratio >= 0.7 && ratio <= 1.3)) predicted = false;
            ratios += (k ? " " : "") + fmt(ratio);
        }
        gate.check(7, "cost estimators match fixed cases and measured totals within 30%",
                   worked && predicted,
                   "predicted/measured " + ratios + " over " + std::to_string(compared) +
                       " timeout-free entries");
    }

    // 8. Selector-0 overhead: chain guards pay per embedded mutant at the
    // anchor, flat dispatch does not. Three variants of one program differ
    // only in how many operators sit on one hot loop line.
    {
        bool ok = true;
        std::vector<long long> valid;
        std::vector<long long> chain_guard;
        std::vector<long long> dispatch_guard;
        for (const char* name : {"dense1", "dense2", "dense3"}) {
            const EntryRun& run = entry_named(runs, name);
            SchemataProgram chain =
                build_schemata(run.unit, run.unopt.mutants, Encoding::TernaryChain);
            SchemataProgram flat =
                build_schemata(run.unit, run.unopt.mutants, Encoding::SwitchCase);
            uint64_t g_chain = 0;
            uint64_t g_flat = 0;
            for (size_t i = 0; i < chain.unit.tests.size(); ++i) {
                ExecSpec spec;
                spec.selector = 0;
                spec.budget.max_steps = std::numeric_limits<uint64_t>::max() / 2;
                spec.schemata = &chain;
                spec.test = &chain.unit.tests[i];
                RunResult rc = run_test(spec).result;
                spec.schemata = &flat;
                spec.test = &flat.unit.tests[i];
                RunResult rf = run_test(spec).result;
                if (rc.status != RunStatus::Pass || rf.status != RunStatus::Pass) ok = false;
                if (rc.steps != rf.steps) ok = false;
                if (rc.steps != run.unopt.budgets[i].baseline_steps) ok = false;
                g_chain += rc.guard_steps;
                g_flat += rf.guard_steps;
            }
            valid.push_back(run.unopt.census.valid);
            chain_guard.push_back(static_cast<long long>(g_chain));
            dispatch_guard.push_back(static_cast<long long>(g_flat));
        }
        long long dv1 = valid[1] - valid[0];
        long long dv2 = valid[2] - valid[1];
        long long c1 = chain_guard[1] - chain_guard[0];
        long long c2 = chain_guard[2] - chain_guard[1];
        long long f1 = dispatch_guard[1] - dispatch_guard[0];
        long long f2 = dispatch_guard[2] - dispatch_guard[1];
        bool linear = dv1 == dv2 && dv1 > 0 && c1 == c2 && c1 > 0;
        bool flatter = f1 < c1 && f2 < c2;
        gate.check(8, "chain guard steps grow linearly with embedded mutants, dispatch stays flat",
                   ok && linear && flatter,
                   "chain " + std::to_string(chain_guard[0]) + "/" +
                       std::to_string(chain_guard[1]) + "/" + std::to_string(chain_guard[2]) +
                       ", dispatch " + std::to_string(dispatch_guard[0]) + "/" +
                       std::to_string(dispatch_guard[1]) + "/" +
                       std::to_string(dispatch_guard[2]));
    }

    // 9. Runaway mutants hit the step budget under every strategy, and the
    // timed-out-as-killed knob moves only the numerator.
    {
        const EntryRun& loops = entry_named(runs, "loops");
        std::set<int> timed_out;
        for (const Verdict& v : loops.unopt.verdicts)
            if (v.outcome == Outcome::TimedOut) timed_out.insert(v.mutant_id);
        bool everywhere = !timed_out.empty();
        for (const StrategyResult* r : configs(loops)) {
            std::set<int> other;
            for (const Verdict& v : r->verdicts)
                if (v.outcome == Outcome::TimedOut) other.insert(v.mutant_id);
            if (other != timed_out) everywhere = false;
        }
        bool add_to_sub = false;
        for (const Mutant& m : loops.unopt.mutants)
            if (timed_out.count(m.id) && m.original == BinOp::Add &&
                m.replacement == BinOp::Sub)
                add_to_sub = true;
        Score plain = mutation_score(loops.unopt, false);
        Score flagged = mutation_score(loops.unopt, true);
        bool moves =
            flagged.value > plain.value &&
            flagged.value ==
                static_cast<double>(plain.killed + plain.timed_out) / plain.valid;
        gate.check(9, "infinite-loop mutants time out everywhere and can count as kills",
                   everywhere && add_to_sub && moves,
                   std::to_string(timed_out.size()) + " timed out in the loop entry");
    }

    // 10. Printing is a parser fixpoint, and a repeated sweep serializes
    // byte-identically once timing fields are dropped.
    {
        bool round = true;
        for (const EntryRun& run : runs) {
            std::string printed = pretty_print(*run.unit.root);
            ProgramUnit reparsed = compile_unit({{run.entry->name + ".mc", printed}}, {});
            if (!reparsed.ok() || pretty_print(*reparsed.root) != printed) round = false;
        }
        Json first = sweep_report(runs);
        std::vector<EntryRun> again = sweep_corpus(corpus);
        Json second = sweep_report(again);
        bool deterministic = strip_timing(first).dump() == strip_timing(second).dump();
        gate.check(10, "printed source reparses to itself and repeated sweeps serialize identically",
                   round && deterministic);
    }

    std::cout << (gate.failures == 0
                      ? "all checks passed"
                      : std::to_string(gate.failures) + " check(s) failed")
              << '\n';
    return gate.failures;
} catch (const std::exception& e) {
    std::cout << "FAIL  gate aborted: " << e.what() << '\n';
    return 1;
}
