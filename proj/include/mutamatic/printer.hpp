#pragma once

#include <string>

#include "mutamatic/ast.hpp"

namespace mutamatic {

// Render a tree back to source text in canonical formatting. The output
// re-parses to a structurally identical tree. Ternary expressions are
// always parenthesized, so nested guard chains read as
// (MNR == 1 ? a + b : (MNR == 2 ? a - b : a * b)).
std::string pretty_print(const AstNode& program);

// Single expression, mainly for tests and report snippets.
std::string print_expression(const AstNode& expr);

}  // namespace mutamatic
