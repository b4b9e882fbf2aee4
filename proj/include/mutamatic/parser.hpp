#pragma once

#include "mutamatic/ast.hpp"
#include "mutamatic/lexer.hpp"

namespace mutamatic {

struct ParseResult {
    AstPtr program;  // Program node holding the file's top-level decls
    std::vector<Diagnostic> diagnostics;
};

// Parse one file into a Program node. Stops at the first syntax error;
// the partial tree is still returned alongside the diagnostic.
ParseResult parse_file(const SourceSet& sources, uint32_t file);

// Convenience for tests: parse a standalone expression.
ParseResult parse_expression(const SourceSet& sources, uint32_t file);

}  // namespace mutamatic
