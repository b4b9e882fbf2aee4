#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mutamatic/source.hpp"

namespace mutamatic {

enum class NodeKind {
    Program,
    FunctionDecl,
    ParamDecl,
    VarDecl,
    Block,
    If,
    While,
    Return,
    ExprStmt,
    Assign,
    AssertStmt,
    TestDecl,
    BinaryOp,
    UnaryOp,
    Ternary,
    Select,
    Call,
    Literal,
    VarRef,
};

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, LogAnd, LogOr, BitAnd, BitOr };
enum class UnOp { Neg, Not };

enum class Type { Int, Float, Bool, String, Void, Unknown };

const char* type_name(Type t);
const char* binop_text(BinOp op);
std::optional<BinOp> binop_from_text(std::string_view text);

// Literal payloads carry their value directly; the active alternative
// matches the literal's type.
using LiteralValue = std::variant<int64_t, double, bool, std::string>;

struct AstNode;
using AstPtr = std::unique_ptr<AstNode>;

// One node covers every construct; `kind` selects which fields and child
// layout apply. Child layout by kind:
//   Program:      top-level decls in source order
//   FunctionDecl: params..., body block        (return type in decl_type)
//   ParamDecl:    -
//   VarDecl:      initializer
//   Block:        statements
//   If:           cond, then block [, else block or else-if]
//   While:        cond, body block
//   Return:       value
//   ExprStmt:     expr
//   Assign:       rhs                           (target variable in name)
//   AssertStmt:   condition
//   TestDecl:     body block
//   BinaryOp:     lhs, rhs                      (operator token span in op_span)
//   UnaryOp:      operand
//   Ternary:      cond, then-expr, else-expr
//   Select:       scrutinee, case arms..., default arm (labels in case_labels)
//   Call:         args...                       (callee in name)
//   Literal:      -
//   VarRef:       -
struct AstNode {
    NodeKind kind;
    SourceSpan span;
    SourceSpan op_span;  // BinaryOp only: the operator token itself

    BinOp op = BinOp::Add;
    UnOp uop = UnOp::Neg;
    std::string name;
    LiteralValue literal = int64_t{0};
    Type decl_type = Type::Void;
    bool is_const = false;
    std::vector<int64_t> case_labels;  // Select: one label per case arm

    std::vector<AstPtr> children;

    // Filled in by the type checker.
    Type type = Type::Unknown;
    bool const_ctx = false;

    // Filled in by the schemata builder. Guard nodes carry dispatch
    // bookkeeping instead of program semantics and are kept out of the
    // semantic step count. reach_site indexes the schemata site table.
    bool guard = false;
    int reach_site = -1;

    AstNode(NodeKind k, SourceSpan s) : kind(k), span(s) {}

    const AstNode& child(size_t i) const { return *children[i]; }
    AstNode& child(size_t i) { return *children[i]; }
};

AstPtr make_node(NodeKind kind, SourceSpan span);

// Deep copy including type annotations and schemata bookkeeping.
AstPtr clone(const AstNode& node);

// Structural comparison: kinds, operators, names, literals, declared types
// and child shapes. Spans and annotations are ignored, so a pretty-printed
// and re-parsed tree compares equal to its source tree.
bool structurally_equal(const AstNode& a, const AstNode& b);

// FunctionDecl helpers for the params-then-body child layout.
inline size_t param_count(const AstNode& fn) { return fn.children.size() - 1; }
inline const AstNode& fn_body(const AstNode& fn) { return *fn.children.back(); }
inline AstNode& fn_body(AstNode& fn) { return *fn.children.back(); }

}  // namespace mutamatic
