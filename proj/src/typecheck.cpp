#include "mutamatic/typecheck.hpp"

#include <map>
#include <set>

namespace mutamatic {

namespace {

bool is_numeric(Type t) { return t == Type::Int || t == Type::Float; }

Type promote(Type a, Type b) {
    return (a == Type::Float || b == Type::Float) ? Type::Float : Type::Int;
}

}  // namespace

std::optional<Type> binary_result_type(BinOp op, Type lhs, Type rhs) {
    switch (op) {
        case BinOp::Add:
            if (lhs == Type::String && rhs == Type::String) return Type::String;
            [[fallthrough]];
        case BinOp::Sub:
        case BinOp::Mul:
        case BinOp::Div:
            if (is_numeric(lhs) && is_numeric(rhs)) return promote(lhs, rhs);
            return std::nullopt;
        case BinOp::Mod:
            if (lhs == Type::Int && rhs == Type::Int) return Type::Int;
            return std::nullopt;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge:
            if (is_numeric(lhs) && is_numeric(rhs)) return Type::Bool;
            return std::nullopt;
        case BinOp::Eq:
        case BinOp::Ne:
            if (is_numeric(lhs) && is_numeric(rhs)) return Type::Bool;
            if (lhs == Type::Bool && rhs == Type::Bool) return Type::Bool;
            if (lhs == Type::String && rhs == Type::String) return Type::Bool;
            return std::nullopt;
        case BinOp::BitAnd:
        case BinOp::BitOr:
            if (lhs == Type::Int && rhs == Type::Int) return Type::Int;
            if (lhs == Type::Bool && rhs == Type::Bool) return Type::Bool;
            return std::nullopt;
        case BinOp::LogAnd:
        case BinOp::LogOr:
            if (lhs == Type::Bool && rhs == Type::Bool) return Type::Bool;
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Type> unary_result_type(UnOp op, Type operand) {
    if (op == UnOp::Neg) {
        if (is_numeric(operand)) return operand;
        return std::nullopt;
    }
    if (operand == Type::Bool) return Type::Bool;
    return std::nullopt;
}

bool assignable(Type to, Type from) {
    if (to == from) return true;
    return to == Type::Float && from == Type::Int;
}

namespace {

struct VarInfo {
    Type type = Type::Unknown;
    bool is_const = false;
};

struct FnSig {
    std::vector<Type> params;
    Type ret = Type::Void;
    bool builtin = false;
};

struct Checker {
    std::vector<Diagnostic> diags;
    std::map<std::string, FnSig> functions;
    std::map<std::string, VarInfo> globals;
    std::vector<std::map<std::string, VarInfo>> scopes;
    const AstNode* current_fn = nullptr;
    bool in_test = false;

    void error(const SourceSpan& span, std::string msg) {
        diags.push_back({Severity::Error, span, std::move(msg)});
    }

    VarInfo* lookup(const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        auto found = globals.find(name);
        return found != globals.end() ? &found->second : nullptr;
    }

    void declare_local(const AstNode& decl) {
        auto& scope = scopes.back();
        if (scope.count(decl.name)) {
            error(decl.span, "redeclaration of '" + decl.name + "'");
            return;
        }
        scope[decl.name] = {decl.decl_type, decl.is_const};
    }

    // First pass over top-level decls: record signatures and globals so
    // bodies can reference them regardless of declaration order.
    void collect_decls(const AstNode& program) {
        functions["print"] = {{Type::String}, Type::Void, true};
        functions["readInput"] = {{}, Type::String, true};
        std::set<std::string> test_names;
        for (const auto& decl : program.children) {
            if (decl->kind == NodeKind::FunctionDecl) {
                if (functions.count(decl->name)) {
                    error(decl->span, "redefinition of function '" + decl->name + "'");
                    continue;
                }
                FnSig sig;
                sig.ret = decl->decl_type;
                for (size_t i = 0; i < param_count(*decl); ++i)
                    sig.params.push_back(decl->child(i).decl_type);
                functions[decl->name] = std::move(sig);
            } else if (decl->kind == NodeKind::VarDecl) {
                if (globals.count(decl->name)) {
                    error(decl->span, "redeclaration of '" + decl->name + "'");
                    continue;
                }
                globals[decl->name] = {decl->decl_type, decl->is_const};
            } else if (decl->kind == NodeKind::TestDecl) {
                if (!test_names.insert(decl->name).second)
                    error(decl->span, "duplicate test name '" + decl->name + "'");
            }
        }
    }

    Type check_expr(AstNode& e) {
        Type t = check_expr_inner(e);
        e.type = t;
        return t;
    }

    Type check_expr_inner(AstNode& e) {
        switch (e.kind) {
            case NodeKind::Literal:
                if (std::holds_alternative<int64_t>(e.literal)) return Type::Int;
                if (std::holds_alternative<double>(e.literal)) return Type::Float;
                if (std::holds_alternative<bool>(e.literal)) return Type::Bool;
                return Type::String;
            case NodeKind::VarRef: {
                VarInfo* v = lookup(e.name);
                if (!v) {
                    error(e.span, "use of undeclared identifier '" + e.name + "'");
                    return Type::Unknown;
                }
                return v->type;
            }
            case NodeKind::UnaryOp: {
                Type operand = check_expr(e.child(0));
                if (operand == Type::Unknown) return Type::Unknown;
                auto result = unary_result_type(e.uop, operand);
                if (!result) {
                    error(e.span, std::string("invalid operand to unary '") +
                                      (e.uop == UnOp::Neg ? "-" : "!") + "' ('" +
                                      type_name(operand) + "')");
                    return Type::Unknown;
                }
                return *result;
            }
            case NodeKind::BinaryOp: {
                Type lhs = check_expr(e.child(0));
                Type rhs = check_expr(e.child(1));
                if (lhs == Type::Unknown || rhs == Type::Unknown) return Type::Unknown;
                auto result = binary_result_type(e.op, lhs, rhs);
                if (!result) {
                    error(e.op_span.length() ? e.op_span : e.span,
                          std::string("invalid operands to binary expression ('") +
                              type_name(lhs) + "' " + binop_text(e.op) + " '" +
                              type_name(rhs) + "')");
                    return Type::Unknown;
                }
                return *result;
            }
            case NodeKind::Ternary: {
                Type cond = check_expr(e.child(0));
                if (cond != Type::Bool && cond != Type::Unknown)
                    error(e.child(0).span, std::string("ternary condition must be bool, got '") +
                                               type_name(cond) + "'");
                Type a = check_expr(e.child(1));
                Type b = check_expr(e.child(2));
                if (a == Type::Unknown || b == Type::Unknown) return Type::Unknown;
                if (a != b) {
                    error(e.span, std::string("ternary arms must have the same type ('") +
                                      type_name(a) + "' vs '" + type_name(b) + "')");
                    return Type::Unknown;
                }
                return a;
            }
            case NodeKind::Select: {
                Type scrutinee = check_expr(e.child(0));
                if (scrutinee != Type::Int && scrutinee != Type::Unknown)
                    error(e.child(0).span,
                          std::string("select scrutinee must be int, got '") +
                              type_name(scrutinee) + "'");
                std::set<int64_t> seen;
                for (int64_t label : e.case_labels)
                    if (!seen.insert(label).second)
                        error(e.span, "duplicate select label " + std::to_string(label));
                Type common = Type::Unknown;
                bool ok = true;
                for (size_t i = 1; i < e.children.size(); ++i) {
                    Type arm = check_expr(e.child(i));
                    if (arm == Type::Unknown) {
                        ok = false;
                        continue;
                    }
                    if (common == Type::Unknown) {
                        common = arm;
                    } else if (arm != common) {
                        error(e.child(i).span,
                              std::string("select arms must have the same type ('") +
                                  type_name(common) + "' vs '" + type_name(arm) + "')");
                        ok = false;
                    }
                }
                return ok ? common : Type::Unknown;
            }
            case NodeKind::Call: {
                auto it = functions.find(e.name);
                if (it == functions.end()) {
                    // Still type the arguments for their own diagnostics.
                    for (auto& arg : e.children) check_expr(*arg);
                    error(e.span, "call to undeclared function '" + e.name + "'");
                    return Type::Unknown;
                }
                const FnSig& sig = it->second;
                if (e.children.size() != sig.params.size()) {
                    for (auto& arg : e.children) check_expr(*arg);
                    error(e.span, "function '" + e.name + "' expects " +
                                      std::to_string(sig.params.size()) + " argument(s), got " +
                                      std::to_string(e.children.size()));
                    return sig.ret;
                }
                for (size_t i = 0; i < e.children.size(); ++i) {
                    Type arg = check_expr(e.child(i));
                    if (arg == Type::Unknown) continue;
                    if (!assignable(sig.params[i], arg))
                        error(e.child(i).span,
                              "argument " + std::to_string(i + 1) + " of '" + e.name +
                                  "' expects '" + type_name(sig.params[i]) + "', got '" +
                                  type_name(arg) + "'");
                }
                return sig.ret;
            }
            default:
                error(e.span, "expression expected");
                return Type::Unknown;
        }
    }

    void mark_const_ctx(AstNode& e) {
        e.const_ctx = true;
        for (auto& c : e.children) mark_const_ctx(*c);
    }

    void check_var_decl(AstNode& decl, bool global) {
        Type init = check_expr(decl.child(0));
        if (init != Type::Unknown && !assignable(decl.decl_type, init))
            error(decl.span, std::string("cannot initialize '") + type_name(decl.decl_type) +
                                 "' variable '" + decl.name + "' with '" + type_name(init) + "'");
        if (decl.is_const) mark_const_ctx(decl.child(0));
        if (!global) declare_local(decl);
    }

    void check_stmt(AstNode& s) {
        switch (s.kind) {
            case NodeKind::VarDecl:
                check_var_decl(s, false);
                break;
            case NodeKind::Assign: {
                Type rhs = check_expr(s.child(0));
                VarInfo* v = lookup(s.name);
                if (!v) {
                    error(s.span, "assignment to undeclared identifier '" + s.name + "'");
                    break;
                }
                if (v->is_const) error(s.span, "cannot assign to const variable '" + s.name + "'");
                if (rhs != Type::Unknown && !assignable(v->type, rhs))
                    error(s.span, std::string("cannot assign '") + type_name(rhs) + "' to '" +
                                      type_name(v->type) + "' variable '" + s.name + "'");
                s.type = v->type;
                break;
            }
            case NodeKind::If: {
                Type cond = check_expr(s.child(0));
                if (cond != Type::Bool && cond != Type::Unknown)
                    error(s.child(0).span,
                          std::string("if condition must be bool, got '") + type_name(cond) + "'");
                check_block(s.child(1));
                if (s.children.size() == 3) {
                    AstNode& tail = s.child(2);
                    if (tail.kind == NodeKind::If)
                        check_stmt(tail);
                    else
                        check_block(tail);
                }
                break;
            }
            case NodeKind::While: {
                Type cond = check_expr(s.child(0));
                if (cond != Type::Bool && cond != Type::Unknown)
                    error(s.child(0).span, std::string("while condition must be bool, got '") +
                                               type_name(cond) + "'");
                check_block(s.child(1));
                break;
            }
            case NodeKind::Return: {
                Type value = check_expr(s.child(0));
                if (in_test) {
                    error(s.span, "return statement is not allowed in a test body");
                    break;
                }
                if (!current_fn) break;
                if (value != Type::Unknown && !assignable(current_fn->decl_type, value))
                    error(s.span, std::string("cannot return '") + type_name(value) +
                                      "' from function returning '" +
                                      type_name(current_fn->decl_type) + "'");
                break;
            }
            case NodeKind::AssertStmt: {
                Type cond = check_expr(s.child(0));
                if (cond != Type::Bool && cond != Type::Unknown)
                    error(s.child(0).span, std::string("assert condition must be bool, got '") +
                                               type_name(cond) + "'");
                break;
            }
            case NodeKind::ExprStmt:
                check_expr(s.child(0));
                break;
            default:
                error(s.span, "statement expected");
                break;
        }
    }

    void check_block(AstNode& block) {
        scopes.emplace_back();
        for (auto& s : block.children) check_stmt(*s);
        scopes.pop_back();
    }

    void check_function(AstNode& fn) {
        current_fn = &fn;
        scopes.emplace_back();
        for (size_t i = 0; i < param_count(fn); ++i) {
            const AstNode& p = fn.child(i);
            if (scopes.back().count(p.name))
                error(p.span, "duplicate parameter name '" + p.name + "'");
            scopes.back()[p.name] = {p.decl_type, false};
        }
        check_block(fn_body(fn));
        scopes.pop_back();
        current_fn = nullptr;
    }

    void run(AstNode& program) {
        collect_decls(program);
        for (auto& decl : program.children) {
            if (decl->kind == NodeKind::VarDecl) {
                check_var_decl(*decl, true);
            } else if (decl->kind == NodeKind::FunctionDecl) {
                check_function(*decl);
            } else if (decl->kind == NodeKind::TestDecl) {
                in_test = true;
                check_block(decl->child(0));
                in_test = false;
            }
        }
    }
};

}  // namespace

std::vector<Diagnostic> type_check(AstNode& program) {
    Checker checker;
    checker.run(program);
    return std::move(checker.diags);
}

}  // namespace mutamatic
