#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mutamatic {

// Byte range [begin, end) inside one source file.
struct SourceSpan {
    uint32_t file = 0;
    uint32_t begin = 0;
    uint32_t end = 0;

    bool operator==(const SourceSpan&) const = default;
    bool contains(const SourceSpan& inner) const {
        return file == inner.file && begin <= inner.begin && inner.end <= end;
    }
    uint32_t length() const { return end - begin; }
};

struct SourceFile {
    std::string path;
    std::string text;
};

// All files of one translation unit. Spans index into this set.
class SourceSet {
public:
    uint32_t add(std::string path, std::string text) {
        files_.push_back({std::move(path), std::move(text)});
        return static_cast<uint32_t>(files_.size() - 1);
    }

    const SourceFile& file(uint32_t id) const { return files_.at(id); }
    size_t count() const { return files_.size(); }

    std::string_view lexeme(const SourceSpan& s) const {
        const std::string& t = files_.at(s.file).text;
        return std::string_view(t).substr(s.begin, s.end - s.begin);
    }

    // 1-based line and column of a byte offset, for diagnostics.
    std::pair<int, int> line_col(uint32_t file, uint32_t offset) const {
        const std::string& t = files_.at(file).text;
        int line = 1, col = 1;
        for (uint32_t i = 0; i < offset && i < t.size(); ++i) {
            if (t[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

private:
    std::vector<SourceFile> files_;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourceSpan span;
    std::string message;
};

inline std::string format_diagnostic(const SourceSet& sources, const Diagnostic& d) {
    auto [line, col] = sources.line_col(d.span.file, d.span.begin);
    std::string out = sources.file(d.span.file).path;
    out += ':' + std::to_string(line) + ':' + std::to_string(col) + ": ";
    out += d.severity == Severity::Error ? "error: " : "warning: ";
    out += d.message;
    return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

}  // namespace mutamatic
