#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mutamatic/interp.hpp"
#include "mutamatic/printer.hpp"
#include "mutamatic/program.hpp"
#include "mutamatic/schemata.hpp"

using namespace mutamatic;

namespace {

const char* kLib = R"(const int LIMIT = 90 + 10;

int add(int a, int b) {
    return a + b;
}

int clamp(int x, int lo, int hi) {
    if (x < lo) {
        return lo;
    }
    if (x > hi) {
        return hi;
    }
    return x;
}

float scale(float v, float k) {
    return v * k;
}

bool inRange(int x) {
    return x >= 0 && x <= LIMIT;
}
)";

const char* kTests = R"(test addSmall {
    assert(add(2, 3) == 5);
    assert(add(0 - 1, 1) == 0);
}

test clampBounds {
    assert(clamp(5, 0, 10) == 5);
    assert(clamp(0 - 3, 0, 10) == 0);
    assert(clamp(42, 0, 10) == 10);
}

test scaling {
    assert(scale(2.0, 1.5) == 3.0);
}

test range {
    assert(inRange(50));
    assert(!inRange(101));
}
)";

struct Observed {
    RunStatus status = RunStatus::Pass;
    std::string output;
    uint64_t steps = 0;
};

bool operator==(const Observed& a, const Observed& b) {
    return a.status == b.status && a.output == b.output && a.steps == b.steps;
}

Observed run_plain(const ProgramUnit& unit, const TestCase& test) {
    ExecSpec spec;
    spec.unit = &unit;
    spec.test = &test;
    TimedRun r = run_test(spec);
    return {r.result.status, r.result.output, r.result.steps};
}

Observed run_selector(const SchemataProgram& sp, const TestCase& test, int selector) {
    ExecSpec spec;
    spec.schemata = &sp;
    spec.selector = selector;
    spec.test = &test;
    TimedRun r = run_test(spec);
    return {r.result.status, r.result.output, r.result.steps};
}

std::vector<NamedSource> lib_src() { return {{"lib.mc", kLib}}; }
std::vector<NamedSource> tests_src() { return {{"lib_test.mc", kTests}}; }

}  // namespace

TEST_CASE("schemata selector runs reproduce textual mutant runs") {
    ProgramUnit unit = compile_unit(lib_src(), tests_src());
    REQUIRE(unit.ok());
    REQUIRE(unit.tests.size() == 4);

    // Original behavior, the baseline everything else is compared against.
    std::vector<Observed> baseline;
    for (const TestCase& t : unit.tests) {
        Observed o = run_plain(unit, t);
        REQUIRE(o.status == RunStatus::Pass);
        baseline.push_back(o);
    }

    std::vector<Mutant> mutants = generate_mutants(unit);
    MutantCensus census = census_of(mutants);
    // 6 anchors inside functions plus the const initializer one.
    CHECK(census.generated == 4 + 4 + 5 + 5 + 4 + 5 + 5 + 1);
    CHECK(census.excluded_const == 4);
    CHECK(census.invalid_type == 1);  // float % float from the scale anchor

    // Ground truth per valid mutant: splice the operator into the source
    // text, recompile the whole unit, run every test.
    std::map<int, std::vector<Observed>> textual;
    for (const Mutant& m : mutants) {
        ProgramUnit mu = compile_unit({{"lib.mc", apply_mutant_text(unit, m, 0)}}, tests_src());
        if (m.validity == Validity::Valid) {
            REQUIRE(mu.ok());
            std::vector<Observed> runs;
            for (const TestCase& t : mu.tests) runs.push_back(run_plain(mu, t));
            textual[m.id] = std::move(runs);
        } else if (m.validity == Validity::InvalidType) {
            CHECK(!mu.ok());
        }
    }

    for (Encoding enc : {Encoding::TernaryChain, Encoding::SwitchCase}) {
        CAPTURE(encoding_name(enc));
        SchemataProgram sp = build_schemata(unit, mutants, enc);
        CHECK(sp.embedded_ids.size() == static_cast<size_t>(census.valid));
        REQUIRE(sp.unit.tests.size() == unit.tests.size());

        // Selector 0 is the original program: same verdicts, same output,
        // same semantic step count as the plain tree.
        for (size_t i = 0; i < sp.unit.tests.size(); ++i) {
            Observed o = run_selector(sp, sp.unit.tests[i], 0);
            CHECK(o == baseline[i]);
        }

        // Selector m is mutant m alone, indistinguishable from the
        // recompiled textual version down to the step count.
        for (int id : sp.embedded_ids) {
            CAPTURE(id);
            REQUIRE(textual.count(id) == 1);
            for (size_t i = 0; i < sp.unit.tests.size(); ++i) {
                Observed o = run_selector(sp, sp.unit.tests[i], id);
                CHECK(o == textual[id][i]);
            }
        }
    }
}

TEST_CASE("printed schemata program runs the original behavior when reparsed") {
    ProgramUnit unit = compile_unit(lib_src(), tests_src());
    REQUIRE(unit.ok());
    std::vector<Mutant> mutants = generate_mutants(unit);

    for (Encoding enc : {Encoding::TernaryChain, Encoding::SwitchCase}) {
        CAPTURE(encoding_name(enc));
        SchemataProgram sp = build_schemata(unit, mutants, enc);
        std::string printed = pretty_print(*sp.unit.root);
        ProgramUnit reparsed = compile_unit({{"schemata.mc", printed}}, {});
        REQUIRE(reparsed.ok());
        REQUIRE(reparsed.tests.size() == unit.tests.size());
        for (size_t i = 0; i < reparsed.tests.size(); ++i) {
            Observed plain = run_plain(unit, unit.tests[i]);
            Observed replay = run_plain(reparsed, reparsed.tests[i]);
            CHECK(replay.status == plain.status);
            CHECK(replay.output == plain.output);
        }
    }
}

TEST_CASE("split run forks agree with dedicated selector runs") {
    ProgramUnit unit = compile_unit(lib_src(), tests_src());
    REQUIRE(unit.ok());
    std::vector<Mutant> mutants = generate_mutants(unit);
    SchemataProgram sp = build_schemata(unit, mutants, Encoding::TernaryChain);

    for (const TestCase& t : sp.unit.tests) {
        CAPTURE(t.name);
        // Which mutants does this test reach at all?
        ExecSpec probe;
        probe.schemata = &sp;
        probe.selector = 0;
        probe.test = &t;
        probe.instrument = true;
        std::vector<int> reached = run_test(probe).result.reached_mutants;

        ExecSpec spec;
        spec.schemata = &sp;
        spec.selector = 0;
        spec.test = &t;
        spec.split = true;
        RunResult r = run_test(spec).result;
        CHECK(r.status == RunStatus::Pass);

        std::set<int> forked;
        for (const ForkRecord& f : r.forks) {
            CHECK(forked.insert(f.mutant_id).second);  // one fork per mutant
            Observed direct = run_selector(sp, t, f.mutant_id);
            CHECK(f.status == direct.status);
            CHECK(f.output == direct.output);
            CHECK(f.steps_total == direct.steps);
        }
        CHECK(forked == std::set<int>(reached.begin(), reached.end()));
    }
}
