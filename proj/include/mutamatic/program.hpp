#pragma once

#include <map>
#include <string>
#include <vector>

#include "mutamatic/ast.hpp"
#include "mutamatic/mutation.hpp"

namespace mutamatic {

struct TestCase {
    std::string name;
    const AstNode* body = nullptr;       // the test's block
    std::vector<std::string> fixture;    // replay lines for readInput()
};

// One translation unit ready to run: production files and test files
// parsed into a single tree, type checked, with name tables built.
// Production code is what mutants are generated from; test code only
// drives it.
struct ProgramUnit {
    SourceSet sources;
    AstPtr root;  // Program node; production decls first, then test decls
    std::vector<Diagnostic> diagnostics;
    std::vector<uint32_t> production_files;

    std::map<std::string, const AstNode*> functions;
    std::vector<const AstNode*> globals;  // declaration order
    std::vector<TestCase> tests;          // file order, then in-file order

    bool ok() const { return !has_errors(diagnostics); }
};

struct NamedSource {
    std::string path;
    std::string text;
};

// Parse + type check. On syntax or type errors the unit is still returned
// with diagnostics filled in and ok() false.
ProgramUnit compile_unit(const std::vector<NamedSource>& production,
                         const std::vector<NamedSource>& tests,
                         const std::map<std::string, std::vector<std::string>>& fixtures = {});

// All candidate mutants of the unit's production code for the enabled
// operator categories, in canonical order with dense 1-based ids.
// Validity is decided per mutant from the anchor's annotated operand
// types, without re-checking the rest of the program.
std::vector<Mutant> generate_mutants(const ProgramUnit& unit,
                                     const std::vector<MutationKind>& enabled = {
                                         MutationKind::ROR, MutationKind::AOR,
                                         MutationKind::LCR});

// The local typing decision for one candidate replacement. Throws
// EngineError(AnchorNotFound) when the anchor span does not name an
// operator of the unit.
Validity check_mutant_validity(const ProgramUnit& unit, const Mutant& mutant);

// Source text of `file` with the mutant's operator token replaced.
// The anchor must lie in that file.
std::string apply_mutant_text(const ProgramUnit& unit, const Mutant& mutant, uint32_t file);

// JSON lines export, one mutant per line, stable across runs.
std::string mutants_to_jsonl(const ProgramUnit& unit, const std::vector<Mutant>& mutants);

}  // namespace mutamatic
