#include "mutamatic/parser.hpp"

namespace mutamatic {

namespace {

// Recursive descent over the token stream. Precedence, loosest first:
//   ?:  ||  &&  |  &  == !=  < <= > >=  + -  * / %  unary  primary
struct Parser {
    const std::vector<Token>& tokens;
    size_t pos = 0;
    std::vector<Diagnostic>& diags;
    bool failed = false;

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos + ahead;
        return i < tokens.size() ? tokens[i] : tokens.back();
    }
    const Token& advance() {
        const Token& t = peek();
        if (pos + 1 < tokens.size()) ++pos;
        return t;
    }
    bool check(TokenKind k) const { return peek().kind == k; }
    bool match(TokenKind k) {
        if (!check(k)) return false;
        advance();
        return true;
    }

    void error_at(const Token& t, TokenKind expected) {
        if (failed) return;
        failed = true;
        diags.push_back({Severity::Error, t.span,
                         std::string("expected ") + token_kind_name(expected) + " but found " +
                             token_kind_name(t.kind)});
    }
    void error_msg(const Token& t, std::string msg) {
        if (failed) return;
        failed = true;
        diags.push_back({Severity::Error, t.span, std::move(msg)});
    }

    const Token* expect(TokenKind k) {
        if (!check(k)) {
            error_at(peek(), k);
            return nullptr;
        }
        return &advance();
    }

    static SourceSpan join(SourceSpan a, SourceSpan b) {
        return {a.file, a.begin, b.end};
    }

    bool at_type_keyword() const {
        switch (peek().kind) {
            case TokenKind::KwInt:
            case TokenKind::KwFloat:
            case TokenKind::KwBool:
            case TokenKind::KwString:
                return true;
            default:
                return false;
        }
    }

    Type parse_type() {
        switch (peek().kind) {
            case TokenKind::KwInt: advance(); return Type::Int;
            case TokenKind::KwFloat: advance(); return Type::Float;
            case TokenKind::KwBool: advance(); return Type::Bool;
            case TokenKind::KwString: advance(); return Type::String;
            default:
                error_msg(peek(), std::string("expected a type name but found ") +
                                      token_kind_name(peek().kind));
                return Type::Int;
        }
    }

    AstPtr parse_program(uint32_t file, uint32_t text_end) {
        auto program = make_node(NodeKind::Program, {file, 0, text_end});
        while (!check(TokenKind::Eof) && !failed) {
            auto decl = parse_top_decl();
            if (!decl) break;
            program->children.push_back(std::move(decl));
        }
        if (!failed && !check(TokenKind::Eof)) error_at(peek(), TokenKind::Eof);
        return program;
    }

    AstPtr parse_top_decl() {
        if (check(TokenKind::KwTest)) return parse_test_decl();
        if (check(TokenKind::KwConst)) return parse_var_decl_stmt();
        if (at_type_keyword()) {
            // Either a function or a global variable: look past "type ident".
            if (peek(1).kind == TokenKind::Ident && peek(2).kind == TokenKind::LParen)
                return parse_function();
            return parse_var_decl_stmt();
        }
        error_msg(peek(), std::string("expected a declaration but found ") +
                              token_kind_name(peek().kind));
        return nullptr;
    }

    AstPtr parse_function() {
        const Token& start = peek();
        Type ret = parse_type();
        const Token* name = expect(TokenKind::Ident);
        if (!name) return nullptr;
        auto fn = make_node(NodeKind::FunctionDecl, start.span);
        fn->name = name->string_value;
        fn->decl_type = ret;
        if (!expect(TokenKind::LParen)) return nullptr;
        if (!check(TokenKind::RParen)) {
            do {
                const Token& pstart = peek();
                Type ptype = parse_type();
                const Token* pname = expect(TokenKind::Ident);
                if (!pname) return nullptr;
                auto param = make_node(NodeKind::ParamDecl, join(pstart.span, pname->span));
                param->name = pname->string_value;
                param->decl_type = ptype;
                fn->children.push_back(std::move(param));
            } while (match(TokenKind::Comma));
        }
        if (!expect(TokenKind::RParen)) return nullptr;
        auto body = parse_block();
        if (!body) return nullptr;
        fn->span = join(start.span, body->span);
        fn->children.push_back(std::move(body));
        return fn;
    }

    AstPtr parse_test_decl() {
        const Token& start = advance();  // 'test'
        const Token* name = expect(TokenKind::Ident);
        if (!name) return nullptr;
        auto body = parse_block();
        if (!body) return nullptr;
        auto decl = make_node(NodeKind::TestDecl, join(start.span, body->span));
        decl->name = name->string_value;
        decl->children.push_back(std::move(body));
        return decl;
    }

    AstPtr parse_block() {
        const Token* open = expect(TokenKind::LBrace);
        if (!open) return nullptr;
        auto block = make_node(NodeKind::Block, open->span);
        while (!check(TokenKind::RBrace) && !check(TokenKind::Eof) && !failed) {
            auto stmt = parse_statement();
            if (!stmt) return nullptr;
            block->children.push_back(std::move(stmt));
        }
        const Token* close = expect(TokenKind::RBrace);
        if (!close) return nullptr;
        block->span = join(open->span, close->span);
        return block;
    }

    // Variable declaration including the trailing semicolon.
    AstPtr parse_var_decl_stmt() {
        const Token& start = peek();
        bool is_const = match(TokenKind::KwConst);
        Type type = parse_type();
        const Token* name = expect(TokenKind::Ident);
        if (!name) return nullptr;
        if (!expect(TokenKind::Assign)) return nullptr;
        auto init = parse_expr();
        if (!init) return nullptr;
        const Token* semi = expect(TokenKind::Semi);
        if (!semi) return nullptr;
        auto decl = make_node(NodeKind::VarDecl, join(start.span, semi->span));
        decl->name = name->string_value;
        decl->decl_type = type;
        decl->is_const = is_const;
        decl->children.push_back(std::move(init));
        return decl;
    }

    AstPtr parse_statement() {
        switch (peek().kind) {
            case TokenKind::KwConst:
            case TokenKind::KwInt:
            case TokenKind::KwFloat:
            case TokenKind::KwBool:
            case TokenKind::KwString:
                return parse_var_decl_stmt();
            case TokenKind::KwIf: return parse_if();
            case TokenKind::KwWhile: return parse_while();
            case TokenKind::KwReturn: return parse_return();
            case TokenKind::KwAssert: return parse_assert();
            default:
                break;
        }
        if (check(TokenKind::Ident) && peek(1).kind == TokenKind::Assign) {
            const Token& name = advance();
            advance();  // '='
            auto rhs = parse_expr();
            if (!rhs) return nullptr;
            const Token* semi = expect(TokenKind::Semi);
            if (!semi) return nullptr;
            auto assign = make_node(NodeKind::Assign, join(name.span, semi->span));
            assign->name = name.string_value;
            assign->children.push_back(std::move(rhs));
            return assign;
        }
        const Token& start = peek();
        auto expr = parse_expr();
        if (!expr) return nullptr;
        const Token* semi = expect(TokenKind::Semi);
        if (!semi) return nullptr;
        auto stmt = make_node(NodeKind::ExprStmt, join(start.span, semi->span));
        stmt->children.push_back(std::move(expr));
        return stmt;
    }

    AstPtr parse_if() {
        const Token& start = advance();  // 'if'
        if (!expect(TokenKind::LParen)) return nullptr;
        auto cond = parse_expr();
        if (!cond) return nullptr;
        if (!expect(TokenKind::RParen)) return nullptr;
        auto then_block = parse_block();
        if (!then_block) return nullptr;
        auto node = make_node(NodeKind::If, join(start.span, then_block->span));
        node->children.push_back(std::move(cond));
        node->children.push_back(std::move(then_block));
        if (match(TokenKind::KwElse)) {
            AstPtr else_branch = check(TokenKind::KwIf) ? parse_if() : parse_block();
            if (!else_branch) return nullptr;
            node->span = join(node->span, else_branch->span);
            node->children.push_back(std::move(else_branch));
        }
        return node;
    }

    AstPtr parse_while() {
        const Token& start = advance();  // 'while'
        if (!expect(TokenKind::LParen)) return nullptr;
        auto cond = parse_expr();
        if (!cond) return nullptr;
        if (!expect(TokenKind::RParen)) return nullptr;
        auto body = parse_block();
        if (!body) return nullptr;
        auto node = make_node(NodeKind::While, join(start.span, body->span));
        node->children.push_back(std::move(cond));
        node->children.push_back(std::move(body));
        return node;
    }

    AstPtr parse_return() {
        const Token& start = advance();  // 'return'
        auto value = parse_expr();
        if (!value) return nullptr;
        const Token* semi = expect(TokenKind::Semi);
        if (!semi) return nullptr;
        auto node = make_node(NodeKind::Return, join(start.span, semi->span));
        node->children.push_back(std::move(value));
        return node;
    }

    AstPtr parse_assert() {
        const Token& start = advance();  // 'assert'
        if (!expect(TokenKind::LParen)) return nullptr;
        auto cond = parse_expr();
        if (!cond) return nullptr;
        if (!expect(TokenKind::RParen)) return nullptr;
        const Token* semi = expect(TokenKind::Semi);
        if (!semi) return nullptr;
        auto node = make_node(NodeKind::AssertStmt, join(start.span, semi->span));
        node->children.push_back(std::move(cond));
        return node;
    }

    AstPtr parse_expr() { return parse_ternary(); }

    AstPtr parse_ternary() {
        auto cond = parse_binary(0);
        if (!cond || !check(TokenKind::Question)) return cond;
        advance();  // '?'
        auto then_expr = parse_expr();
        if (!then_expr) return nullptr;
        if (!expect(TokenKind::Colon)) return nullptr;
        auto else_expr = parse_ternary();
        if (!else_expr) return nullptr;
        auto node = make_node(NodeKind::Ternary, join(cond->span, else_expr->span));
        node->children.push_back(std::move(cond));
        node->children.push_back(std::move(then_expr));
        node->children.push_back(std::move(else_expr));
        return node;
    }

    struct OpLevel {
        TokenKind token;
        BinOp op;
    };

    // Binary precedence table, loosest level first. Each level is
    // left-associative.
    static const std::vector<std::vector<OpLevel>>& levels() {
        static const std::vector<std::vector<OpLevel>> table = {
            {{TokenKind::PipePipe, BinOp::LogOr}},
            {{TokenKind::AmpAmp, BinOp::LogAnd}},
            {{TokenKind::Pipe, BinOp::BitOr}},
            {{TokenKind::Amp, BinOp::BitAnd}},
            {{TokenKind::EqEq, BinOp::Eq}, {TokenKind::NotEq, BinOp::Ne}},
            {{TokenKind::Lt, BinOp::Lt},
             {TokenKind::Le, BinOp::Le},
             {TokenKind::Gt, BinOp::Gt},
             {TokenKind::Ge, BinOp::Ge}},
            {{TokenKind::Plus, BinOp::Add}, {TokenKind::Minus, BinOp::Sub}},
            {{TokenKind::Star, BinOp::Mul},
             {TokenKind::Slash, BinOp::Div},
             {TokenKind::Percent, BinOp::Mod}},
        };
        return table;
    }

    AstPtr parse_binary(size_t level) {
        if (level >= levels().size()) return parse_unary();
        auto lhs = parse_binary(level + 1);
        if (!lhs) return nullptr;
        while (true) {
            const OpLevel* matched = nullptr;
            for (const auto& candidate : levels()[level]) {
                if (check(candidate.token)) {
                    matched = &candidate;
                    break;
                }
            }
            if (!matched) return lhs;
            const Token& op_token = advance();
            auto rhs = parse_binary(level + 1);
            if (!rhs) return nullptr;
            auto node = make_node(NodeKind::BinaryOp, join(lhs->span, rhs->span));
            node->op = matched->op;
            node->op_span = op_token.span;
            node->children.push_back(std::move(lhs));
            node->children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
    }

    AstPtr parse_unary() {
        if (check(TokenKind::Minus) || check(TokenKind::Bang)) {
            const Token& op_token = advance();
            auto operand = parse_unary();
            if (!operand) return nullptr;
            auto node = make_node(NodeKind::UnaryOp, join(op_token.span, operand->span));
            node->uop = op_token.kind == TokenKind::Minus ? UnOp::Neg : UnOp::Not;
            node->children.push_back(std::move(operand));
            return node;
        }
        return parse_primary();
    }

    AstPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::IntLit: {
                advance();
                auto node = make_node(NodeKind::Literal, t.span);
                node->literal = t.int_value;
                return node;
            }
            case TokenKind::FloatLit: {
                advance();
                auto node = make_node(NodeKind::Literal, t.span);
                node->literal = t.float_value;
                return node;
            }
            case TokenKind::StringLit: {
                advance();
                auto node = make_node(NodeKind::Literal, t.span);
                node->literal = t.string_value;
                return node;
            }
            case TokenKind::KwTrue:
            case TokenKind::KwFalse: {
                advance();
                auto node = make_node(NodeKind::Literal, t.span);
                node->literal = (t.kind == TokenKind::KwTrue);
                return node;
            }
            case TokenKind::Ident: {
                advance();
                if (check(TokenKind::LParen)) {
                    advance();
                    auto call = make_node(NodeKind::Call, t.span);
                    call->name = t.string_value;
                    if (!check(TokenKind::RParen)) {
                        do {
                            auto arg = parse_expr();
                            if (!arg) return nullptr;
                            call->children.push_back(std::move(arg));
                        } while (match(TokenKind::Comma));
                    }
                    const Token* close = expect(TokenKind::RParen);
                    if (!close) return nullptr;
                    call->span = join(t.span, close->span);
                    return call;
                }
                auto node = make_node(NodeKind::VarRef, t.span);
                node->name = t.string_value;
                return node;
            }
            case TokenKind::LParen: {
                advance();
                auto inner = parse_expr();
                if (!inner) return nullptr;
                if (!expect(TokenKind::RParen)) return nullptr;
                return inner;
            }
            case TokenKind::KwSelect: return parse_select();
            default:
                error_msg(t, std::string("expected an expression but found ") +
                                 token_kind_name(t.kind));
                return nullptr;
        }
    }

    // select (scrutinee) { LABEL: expr; ... default: expr; }
    AstPtr parse_select() {
        const Token& start = advance();  // 'select'
        if (!expect(TokenKind::LParen)) return nullptr;
        auto scrutinee = parse_expr();
        if (!scrutinee) return nullptr;
        if (!expect(TokenKind::RParen)) return nullptr;
        if (!expect(TokenKind::LBrace)) return nullptr;
        auto node = make_node(NodeKind::Select, start.span);
        node->children.push_back(std::move(scrutinee));
        std::vector<AstPtr> arms;
        while (check(TokenKind::IntLit)) {
            const Token& label = advance();
            if (!expect(TokenKind::Colon)) return nullptr;
            auto arm = parse_expr();
            if (!arm) return nullptr;
            if (!expect(TokenKind::Semi)) return nullptr;
            node->case_labels.push_back(label.int_value);
            arms.push_back(std::move(arm));
        }
        if (!expect(TokenKind::KwDefault)) return nullptr;
        if (!expect(TokenKind::Colon)) return nullptr;
        auto fallback = parse_expr();
        if (!fallback) return nullptr;
        if (!expect(TokenKind::Semi)) return nullptr;
        const Token* close = expect(TokenKind::RBrace);
        if (!close) return nullptr;
        for (auto& arm : arms) node->children.push_back(std::move(arm));
        node->children.push_back(std::move(fallback));
        node->span = join(start.span, close->span);
        return node;
    }
};

}  // namespace

ParseResult parse_file(const SourceSet& sources, uint32_t file) {
    ParseResult result;
    LexResult lexed = tokenize(sources, file);
    result.diagnostics = std::move(lexed.diagnostics);
    if (has_errors(result.diagnostics)) {
        result.program = make_node(NodeKind::Program, {file, 0, 0});
        return result;
    }
    Parser parser{lexed.tokens, 0, result.diagnostics};
    uint32_t text_end = static_cast<uint32_t>(sources.file(file).text.size());
    result.program = parser.parse_program(file, text_end);
    return result;
}

ParseResult parse_expression(const SourceSet& sources, uint32_t file) {
    ParseResult result;
    LexResult lexed = tokenize(sources, file);
    result.diagnostics = std::move(lexed.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    Parser parser{lexed.tokens, 0, result.diagnostics};
    result.program = parser.parse_expr();
    if (!parser.failed && !parser.check(TokenKind::Eof))
        parser.error_at(parser.peek(), TokenKind::Eof);
    return result;
}

}  // namespace mutamatic
