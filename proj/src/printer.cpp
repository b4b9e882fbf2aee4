#include "mutamatic/printer.hpp"

#include <charconv>

namespace mutamatic {

namespace {

int binop_precedence(BinOp op) {
    switch (op) {
        case BinOp::LogOr: return 1;
        case BinOp::LogAnd: return 2;
        case BinOp::BitOr: return 3;
        case BinOp::BitAnd: return 4;
        case BinOp::Eq:
        case BinOp::Ne: return 5;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: return 6;
        case BinOp::Add:
        case BinOp::Sub: return 7;
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod: return 8;
    }
    return 0;
}

std::string float_text(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, r.ptr);
    // Keep the literal lexing as a float once re-parsed.
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            default: out += c; break;
        }
    }
    out += '"';
    return out;
}

struct Printer {
    std::string out;
    int indent = 0;

    void line_start() { out.append(static_cast<size_t>(indent) * 4, ' '); }

    void type_name_of(Type t) { out += type_name(t); }

    void expr(const AstNode& e, int min_prec) {
        switch (e.kind) {
            case NodeKind::Literal:
                if (std::holds_alternative<int64_t>(e.literal)) {
                    out += std::to_string(std::get<int64_t>(e.literal));
                } else if (std::holds_alternative<double>(e.literal)) {
                    out += float_text(std::get<double>(e.literal));
                } else if (std::holds_alternative<bool>(e.literal)) {
                    out += std::get<bool>(e.literal) ? "true" : "false";
                } else {
                    out += escape_string(std::get<std::string>(e.literal));
                }
                break;
            case NodeKind::VarRef:
                out += e.name;
                break;
            case NodeKind::Call: {
                out += e.name;
                out += '(';
                for (size_t i = 0; i < e.children.size(); ++i) {
                    if (i) out += ", ";
                    expr(e.child(i), 0);
                }
                out += ')';
                break;
            }
            case NodeKind::UnaryOp: {
                out += e.uop == UnOp::Neg ? "-" : "!";
                bool wrap = e.child(0).kind == NodeKind::UnaryOp;
                if (wrap) out += '(';
                expr(e.child(0), 9);
                if (wrap) out += ')';
                break;
            }
            case NodeKind::BinaryOp: {
                int prec = binop_precedence(e.op);
                bool wrap = prec < min_prec;
                if (wrap) out += '(';
                expr(e.child(0), prec);
                out += ' ';
                out += binop_text(e.op);
                out += ' ';
                expr(e.child(1), prec + 1);
                if (wrap) out += ')';
                break;
            }
            case NodeKind::Ternary:
                out += '(';
                expr(e.child(0), 1);
                out += " ? ";
                expr(e.child(1), 0);
                out += " : ";
                expr(e.child(2), 0);
                out += ')';
                break;
            case NodeKind::Select: {
                out += "select (";
                expr(e.child(0), 0);
                out += ") { ";
                for (size_t i = 0; i < e.case_labels.size(); ++i) {
                    out += std::to_string(e.case_labels[i]);
                    out += ": ";
                    expr(e.child(i + 1), 0);
                    out += "; ";
                }
                out += "default: ";
                expr(*e.children.back(), 0);
                out += "; }";
                break;
            }
            default:
                out += "<?>";
                break;
        }
    }

    void var_decl(const AstNode& d) {
        if (d.is_const) out += "const ";
        type_name_of(d.decl_type);
        out += ' ';
        out += d.name;
        out += " = ";
        expr(d.child(0), 0);
        out += ';';
    }

    void stmt(const AstNode& s) {
        switch (s.kind) {
            case NodeKind::VarDecl:
                line_start();
                var_decl(s);
                out += '\n';
                break;
            case NodeKind::Assign:
                line_start();
                out += s.name;
                out += " = ";
                expr(s.child(0), 0);
                out += ";\n";
                break;
            case NodeKind::Return:
                line_start();
                out += "return ";
                expr(s.child(0), 0);
                out += ";\n";
                break;
            case NodeKind::AssertStmt:
                line_start();
                out += "assert(";
                expr(s.child(0), 0);
                out += ");\n";
                break;
            case NodeKind::ExprStmt:
                line_start();
                expr(s.child(0), 0);
                out += ";\n";
                break;
            case NodeKind::If:
                line_start();
                if_chain(s);
                break;
            case NodeKind::While:
                line_start();
                out += "while (";
                expr(s.child(0), 0);
                out += ") {\n";
                block_body(s.child(1));
                line_start();
                out += "}\n";
                break;
            default:
                line_start();
                out += "<?>;\n";
                break;
        }
    }

    // Prints "if (...) { ... }" plus any else/else-if tail; the caller has
    // already emitted the indentation for the first keyword.
    void if_chain(const AstNode& s) {
        out += "if (";
        expr(s.child(0), 0);
        out += ") {\n";
        block_body(s.child(1));
        line_start();
        out += '}';
        if (s.children.size() == 3) {
            const AstNode& tail = s.child(2);
            out += " else ";
            if (tail.kind == NodeKind::If) {
                if_chain(tail);
                return;
            }
            out += "{\n";
            block_body(tail);
            line_start();
            out += '}';
        }
        out += '\n';
    }

    void block_body(const AstNode& block) {
        ++indent;
        for (const auto& child : block.children) stmt(*child);
        --indent;
    }

    void top_decl(const AstNode& d) {
        switch (d.kind) {
            case NodeKind::FunctionDecl: {
                type_name_of(d.decl_type);
                out += ' ';
                out += d.name;
                out += '(';
                size_t params = param_count(d);
                for (size_t i = 0; i < params; ++i) {
                    if (i) out += ", ";
                    type_name_of(d.child(i).decl_type);
                    out += ' ';
                    out += d.child(i).name;
                }
                out += ") {\n";
                block_body(fn_body(d));
                out += "}\n";
                break;
            }
            case NodeKind::TestDecl:
                out += "test ";
                out += d.name;
                out += " {\n";
                block_body(d.child(0));
                out += "}\n";
                break;
            case NodeKind::VarDecl:
                var_decl(d);
                out += '\n';
                break;
            default:
                out += "<?>\n";
                break;
        }
    }
};

}  // namespace

std::string pretty_print(const AstNode& program) {
    Printer p;
    for (size_t i = 0; i < program.children.size(); ++i) {
        if (i) p.out += '\n';
        p.top_decl(program.child(i));
    }
    return p.out;
}

std::string print_expression(const AstNode& expr) {
    Printer p;
    p.expr(expr, 0);
    return p.out;
}

}  // namespace mutamatic
