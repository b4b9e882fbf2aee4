#include <doctest.h>

#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mutamatic/corpus.hpp"
#include "mutamatic/interp.hpp"
#include "mutamatic/mutation.hpp"
#include "mutamatic/program.hpp"

using namespace mutamatic;

namespace {

Corpus load_bundled() {
    return load_corpus(std::string(MUTAMATIC_SOURCE_DIR) + "/corpus/manifest.json");
}

Budget huge_budget() {
    return {std::numeric_limits<uint64_t>::max() / 2, 10.0};
}

}  // namespace

TEST_CASE("operator replacement tables") {
    MutationKind kind;
    REQUIRE(mutation_kind_of(BinOp::Lt, kind));
    CHECK(kind == MutationKind::ROR);
    REQUIRE(mutation_kind_of(BinOp::Mod, kind));
    CHECK(kind == MutationKind::AOR);
    REQUIRE(mutation_kind_of(BinOp::LogOr, kind));
    CHECK(kind == MutationKind::LCR);

    CHECK(replacements_for(BinOp::Lt).size() == 5);
    CHECK(replacements_for(BinOp::Add).size() == 4);
    CHECK(replacements_for(BinOp::LogAnd) == std::vector<BinOp>{BinOp::LogOr});
    CHECK(replacements_for(BinOp::BitOr) == std::vector<BinOp>{BinOp::BitAnd});

    for (BinOp r : replacements_for(BinOp::Eq)) CHECK(r != BinOp::Eq);
}

TEST_CASE("bundled corpus meets the advertised floor") {
    Corpus corpus = load_bundled();
    CHECK(corpus.entries.size() >= 15);

    size_t tests = 0;
    size_t generated = 0;
    bool any_invalid = false;
    bool any_excluded = false;
    for (const CorpusEntry& entry : corpus.entries) {
        CAPTURE(entry.name);
        ProgramUnit unit = compile_entry(entry);
        REQUIRE(unit.ok());
        tests += unit.tests.size();

        auto mutants = generate_mutants(unit, kAllMutationKinds);
        generated += mutants.size();
        MutantCensus census = census_of(mutants);
        CHECK(census.generated == census.considered + census.excluded_const);
        CHECK(census.considered == census.valid + census.invalid_type);
        any_invalid = any_invalid || census.invalid_type > 0;
        any_excluded = any_excluded || census.excluded_const > 0;
    }
    CHECK(tests >= 60);
    CHECK(generated >= 300);
    CHECK(any_invalid);
    CHECK(any_excluded);
}

TEST_CASE("every corpus test passes on the unmutated program") {
    Corpus corpus = load_bundled();
    for (const CorpusEntry& entry : corpus.entries) {
        CAPTURE(entry.name);
        ProgramUnit unit = compile_entry(entry);
        REQUIRE(unit.ok());
        for (const TestCase& tc : unit.tests) {
            CAPTURE(tc.name);
            ExecSpec spec;
            spec.unit = &unit;
            spec.test = &tc;
            spec.budget = huge_budget();
            TimedRun run = run_test(spec);
            CHECK(run.result.status == RunStatus::Pass);
            if (run.result.status != RunStatus::Pass) CAPTURE(run.result.message);
        }
    }
}

TEST_CASE("mutant ids are dense and anchors never collide") {
    Corpus corpus = load_bundled();
    for (const CorpusEntry& entry : corpus.entries) {
        CAPTURE(entry.name);
        ProgramUnit unit = compile_entry(entry);
        auto mutants = generate_mutants(unit, kAllMutationKinds);

        std::set<uint32_t> production(unit.production_files.begin(),
                                      unit.production_files.end());
        int expect = 1;
        std::map<std::tuple<uint32_t, uint32_t, uint32_t>, BinOp> anchor_ops;
        for (const Mutant& m : mutants) {
            CHECK(m.id == expect);
            ++expect;
            CHECK(production.count(m.anchor.file) == 1);
            CHECK(m.replacement != m.original);
            auto key = std::make_tuple(m.anchor.file, m.anchor.begin, m.anchor.end);
            auto found = anchor_ops.find(key);
            if (found != anchor_ops.end())
                CHECK(found->second == m.original);  // same anchor, same source op
            else
                anchor_ops.emplace(key, m.original);
        }
    }
}

TEST_CASE("generation is deterministic") {
    Corpus first = load_bundled();
    Corpus second = load_bundled();
    REQUIRE(first.entries.size() == second.entries.size());
    for (size_t i = 0; i < first.entries.size(); ++i) {
        ProgramUnit a = compile_entry(first.entries[i]);
        ProgramUnit b = compile_entry(second.entries[i]);
        auto ma = generate_mutants(a, kAllMutationKinds);
        auto mb = generate_mutants(b, kAllMutationKinds);
        CHECK(mutants_to_jsonl(a, ma) == mutants_to_jsonl(b, mb));
    }
}

TEST_CASE("validity labels match brute-force textual insertion") {
    Corpus corpus = load_bundled();
    for (const CorpusEntry& entry : corpus.entries) {
        CAPTURE(entry.name);
        ProgramUnit unit = compile_entry(entry);
        auto mutants = generate_mutants(unit, kAllMutationKinds);
        for (const Mutant& m : mutants) {
            CAPTURE(m.id);
            CHECK(check_mutant_validity(unit, m) == m.validity);
            if (m.validity == Validity::ExcludedConst) continue;
            ProgramUnit mutated = compile_entry_mutated(entry, unit, m);
            if (m.validity == Validity::Valid)
                CHECK(mutated.ok());
            else
                CHECK(!mutated.ok());
        }
    }
}

TEST_CASE("const context wins over type validity") {
    std::vector<NamedSource> production{
        {"lib.mc", "const string s = \"a\" + \"b\";\n"
                   "string peek() {\n"
                   "    return s;\n"
                   "}\n"}};
    std::vector<NamedSource> tests{
        {"tests.mc", "test peeks {\n    assert(peek() == \"ab\");\n}\n"}};
    ProgramUnit unit = compile_unit(production, tests, {});
    REQUIRE(unit.ok());

    auto mutants = generate_mutants(unit, kAllMutationKinds);
    REQUIRE(mutants.size() == 4);
    for (const Mutant& m : mutants) {
        // "a" - "b" would also be a type error, but the const context is
        // what excludes it; the label must say so.
        CHECK(m.validity == Validity::ExcludedConst);
        CHECK(check_mutant_validity(unit, m) == Validity::ExcludedConst);
    }
    MutantCensus census = census_of(mutants);
    CHECK(census.excluded_const == 4);
    CHECK(census.considered == 0);
}

TEST_CASE("operator selection narrows generation") {
    Corpus corpus = load_bundled();
    const CorpusEntry* arith = nullptr;
    for (const CorpusEntry& entry : corpus.entries)
        if (entry.name == "arith") arith = &entry;
    REQUIRE(arith != nullptr);

    ProgramUnit unit = compile_entry(*arith);
    auto ror_only = generate_mutants(unit, {MutationKind::ROR});
    CHECK(!ror_only.empty());
    int expect = 1;
    for (const Mutant& m : ror_only) {
        CHECK(m.kind == MutationKind::ROR);
        CHECK(m.id == expect);  // ids stay dense after narrowing
        ++expect;
    }

    auto all = generate_mutants(unit, kAllMutationKinds);
    size_t ror_in_all = 0;
    for (const Mutant& m : all)
        if (m.kind == MutationKind::ROR) ++ror_in_all;
    CHECK(ror_in_all == ror_only.size());
}
