#include "mutamatic/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mutamatic/errors.hpp"

namespace mutamatic {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw EngineError(ErrorKind::CorpusError, "cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::string text = read_file(path);
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(std::move(current));
    return lines;
}

}  // namespace

int count_lopc(const std::string& text) {
    int count = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        size_t end = eol == std::string::npos ? text.size() : eol;
        std::string_view line(text.data() + pos, end - pos);
        size_t comment = line.find("//");
        if (comment != std::string_view::npos) line = line.substr(0, comment);
        bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
        if (!blank) ++count;
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    return count;
}

Corpus load_corpus(const std::string& manifest_path) {
    fs::path manifest(manifest_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(manifest));
    } catch (const nlohmann::json::exception& e) {
        throw EngineError(ErrorKind::CorpusError,
                          "malformed manifest " + manifest_path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw EngineError(ErrorKind::CorpusError,
                          "manifest must be an object with an \"entries\" array");

    fs::path base = manifest.parent_path();
    Corpus corpus;
    corpus.manifest_path = manifest_path;
    for (const auto& je : doc["entries"]) {
        CorpusEntry entry;
        if (!je.contains("name") || !je.contains("programs") || !je.contains("tests"))
            throw EngineError(ErrorKind::CorpusError,
                              "each entry needs \"name\", \"programs\" and \"tests\"");
        entry.name = je["name"].get<std::string>();
        for (const auto& p : je["programs"]) {
            std::string rel = p.get<std::string>();
            std::string text = read_file(base / rel);
            entry.lopc += count_lopc(text);
            entry.programs.push_back({rel, std::move(text)});
        }
        for (const auto& p : je["tests"]) {
            std::string rel = p.get<std::string>();
            entry.tests.push_back({rel, read_file(base / rel)});
        }
        if (je.contains("fixtures")) {
            for (const auto& [test_name, file] : je["fixtures"].items())
                entry.fixtures[test_name] = read_lines(base / file.get<std::string>());
        }
        corpus.entries.push_back(std::move(entry));
    }
    return corpus;
}

ProgramUnit compile_entry(const CorpusEntry& entry) {
    return compile_unit(entry.programs, entry.tests, entry.fixtures);
}

ProgramUnit compile_entry_mutated(const CorpusEntry& entry, const ProgramUnit& original,
                                  const Mutant& mutant) {
    std::vector<NamedSource> mutated = entry.programs;
    const std::string& anchor_path = original.sources.file(mutant.anchor.file).path;
    bool replaced = false;
    for (auto& src : mutated) {
        if (src.path == anchor_path) {
            src.text = apply_mutant_text(original, mutant, mutant.anchor.file);
            replaced = true;
            break;
        }
    }
    if (!replaced)
        throw EngineError(ErrorKind::AnchorNotFound,
                          "mutant anchor file not part of entry: " + anchor_path);
    return compile_unit(mutated, entry.tests, entry.fixtures);
}

}  // namespace mutamatic
