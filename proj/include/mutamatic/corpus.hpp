#pragma once

#include <map>
#include <string>
#include <vector>

#include "mutamatic/mutation.hpp"
#include "mutamatic/program.hpp"

namespace mutamatic {

// One analyzable program of the corpus: production sources, the tests
// that drive them, and optional input fixtures replayed by readInput().
struct CorpusEntry {
    std::string name;
    std::vector<NamedSource> programs;
    std::vector<NamedSource> tests;
    std::map<std::string, std::vector<std::string>> fixtures;  // test name -> lines
    int lopc = 0;  // non-blank, non-comment production lines
};

struct Corpus {
    std::string manifest_path;
    std::vector<CorpusEntry> entries;
};

// Reads a manifest of the form
//   { "entries": [ { "name": ..., "programs": [...], "tests": [...],
//                    "fixtures": { "test": "file" } } ] }
// with paths relative to the manifest. Throws EngineError(CorpusError)
// on missing files or malformed structure.
Corpus load_corpus(const std::string& manifest_path);

ProgramUnit compile_entry(const CorpusEntry& entry);

// Entry with one production file's text replaced by the mutated text.
ProgramUnit compile_entry_mutated(const CorpusEntry& entry, const ProgramUnit& original,
                                  const Mutant& mutant);

int count_lopc(const std::string& text);

}  // namespace mutamatic
