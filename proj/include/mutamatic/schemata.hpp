#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mutamatic/mutation.hpp"
#include "mutamatic/program.hpp"

namespace mutamatic {

enum class Encoding { TernaryChain, SwitchCase };

const char* encoding_name(Encoding e);

// One guarded location of the rewritten program. Sites are per operator
// anchor in both encodings, so reachability means the same thing under
// either one: the site fires exactly when the original operator would
// have been evaluated.
struct SiteInfo {
    SourceSpan anchor;
    std::vector<int> mutant_ids;  // ascending
};

// A program with every valid mutant embedded at once behind a runtime
// selector. Selector 0 runs the original behavior; selector m runs
// mutant m alone.
//
// TernaryChain guards each anchor with a nested conditional:
//   (MNR == 1 ? a + b : (MNR == 2 ? a - b : a * b))
// SwitchCase guards each statement expression with one flat dispatch:
//   select (MNR) { 1: ...; 2: ...; default: original; }
// where every case holds the whole expression with one mutant applied.
struct SchemataProgram {
    ProgramUnit unit;
    Encoding encoding = Encoding::TernaryChain;
    std::string selector_name = "MNR";
    std::vector<SiteInfo> sites;
    std::map<int, int> site_of_mutant;  // mutant id -> index into sites
    std::vector<int> embedded_ids;      // all embedded mutant ids, ascending
};

// Embeds every Valid mutant of the list. Invalid and const-excluded
// mutants are left out. Throws EngineError(BuildError) when the program
// already uses the selector name, and EngineError(EncodingError) when a
// supposed-valid replacement would change an expression's static type.
SchemataProgram build_schemata(const ProgramUnit& unit, const std::vector<Mutant>& mutants,
                               Encoding encoding = Encoding::TernaryChain);

}  // namespace mutamatic
