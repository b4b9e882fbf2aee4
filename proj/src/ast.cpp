#include "mutamatic/ast.hpp"

namespace mutamatic {

const char* type_name(Type t) {
    switch (t) {
        case Type::Int: return "int";
        case Type::Float: return "float";
        case Type::Bool: return "bool";
        case Type::String: return "string";
        case Type::Void: return "void";
        case Type::Unknown: return "unknown";
    }
    return "?";
}

const char* binop_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::LogAnd: return "&&";
        case BinOp::LogOr: return "||";
        case BinOp::BitAnd: return "&";
        case BinOp::BitOr: return "|";
    }
    return "?";
}

std::optional<BinOp> binop_from_text(std::string_view text) {
    if (text == "+") return BinOp::Add;
    if (text == "-") return BinOp::Sub;
    if (text == "*") return BinOp::Mul;
    if (text == "/") return BinOp::Div;
    if (text == "%") return BinOp::Mod;
    if (text == "<") return BinOp::Lt;
    if (text == "<=") return BinOp::Le;
    if (text == ">") return BinOp::Gt;
    if (text == ">=") return BinOp::Ge;
    if (text == "==") return BinOp::Eq;
    if (text == "!=") return BinOp::Ne;
    if (text == "&&") return BinOp::LogAnd;
    if (text == "||") return BinOp::LogOr;
    if (text == "&") return BinOp::BitAnd;
    if (text == "|") return BinOp::BitOr;
    return std::nullopt;
}

AstPtr make_node(NodeKind kind, SourceSpan span) {
    return std::make_unique<AstNode>(kind, span);
}

AstPtr clone(const AstNode& node) {
    auto copy = std::make_unique<AstNode>(node.kind, node.span);
    copy->op_span = node.op_span;
    copy->op = node.op;
    copy->uop = node.uop;
    copy->name = node.name;
    copy->literal = node.literal;
    copy->decl_type = node.decl_type;
    copy->is_const = node.is_const;
    copy->case_labels = node.case_labels;
    copy->type = node.type;
    copy->const_ctx = node.const_ctx;
    copy->guard = node.guard;
    copy->reach_site = node.reach_site;
    copy->children.reserve(node.children.size());
    for (const auto& c : node.children) copy->children.push_back(clone(*c));
    return copy;
}

bool structurally_equal(const AstNode& a, const AstNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::BinaryOp:
            if (a.op != b.op) return false;
            break;
        case NodeKind::UnaryOp:
            if (a.uop != b.uop) return false;
            break;
        case NodeKind::Literal:
            if (a.literal != b.literal) return false;
            break;
        case NodeKind::VarRef:
        case NodeKind::Call:
        case NodeKind::Assign:
        case NodeKind::TestDecl:
            if (a.name != b.name) return false;
            break;
        case NodeKind::FunctionDecl:
        case NodeKind::ParamDecl:
        case NodeKind::VarDecl:
            if (a.name != b.name || a.decl_type != b.decl_type || a.is_const != b.is_const)
                return false;
            break;
        case NodeKind::Select:
            if (a.case_labels != b.case_labels) return false;
            break;
        default:
            break;
    }
    if (a.children.size() != b.children.size()) return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(*a.children[i], *b.children[i])) return false;
    return true;
}

}  // namespace mutamatic
