#pragma once

#include <optional>
#include <vector>

#include "mutamatic/ast.hpp"

namespace mutamatic {

// Static typing rule for one binary operator application. Returns the
// result type, or nullopt when the operand combination is not typeable:
//   + - * /   numeric, int promotes to float when mixed
//   +         also string x string concatenation
//   %         int x int only, no promotion
//   < <= > >= numeric comparison
//   == !=     numeric, bool x bool, or string x string
//   & |       int x int or bool x bool
//   && ||     bool x bool
std::optional<Type> binary_result_type(BinOp op, Type lhs, Type rhs);

std::optional<Type> unary_result_type(UnOp op, Type operand);

// True when a value of type `from` can initialize or be assigned to a
// slot of type `to`. Identical types always; int widens to float.
bool assignable(Type to, Type from);

// Checks a whole translation unit (production code and tests together)
// and annotates every expression node with its type. Initializers of
// const declarations are additionally flagged as const context. All
// problems are collected; checking does not stop at the first error.
std::vector<Diagnostic> type_check(AstNode& program);

}  // namespace mutamatic
