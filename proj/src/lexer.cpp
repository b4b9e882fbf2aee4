#include "mutamatic/lexer.hpp"

#include <cctype>
#include <charconv>
#include <map>

namespace mutamatic {

const char* token_kind_name(TokenKind k) {
    switch (k) {
        case TokenKind::Ident: return "identifier";
        case TokenKind::IntLit: return "integer literal";
        case TokenKind::FloatLit: return "float literal";
        case TokenKind::StringLit: return "string literal";
        case TokenKind::KwInt: return "'int'";
        case TokenKind::KwFloat: return "'float'";
        case TokenKind::KwBool: return "'bool'";
        case TokenKind::KwString: return "'string'";
        case TokenKind::KwConst: return "'const'";
        case TokenKind::KwIf: return "'if'";
        case TokenKind::KwElse: return "'else'";
        case TokenKind::KwWhile: return "'while'";
        case TokenKind::KwReturn: return "'return'";
        case TokenKind::KwAssert: return "'assert'";
        case TokenKind::KwTest: return "'test'";
        case TokenKind::KwSelect: return "'select'";
        case TokenKind::KwDefault: return "'default'";
        case TokenKind::KwTrue: return "'true'";
        case TokenKind::KwFalse: return "'false'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::Comma: return "','";
        case TokenKind::Semi: return "';'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Question: return "'?'";
        case TokenKind::Assign: return "'='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Slash: return "'/'";
        case TokenKind::Percent: return "'%'";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Ge: return "'>='";
        case TokenKind::EqEq: return "'=='";
        case TokenKind::NotEq: return "'!='";
        case TokenKind::AmpAmp: return "'&&'";
        case TokenKind::PipePipe: return "'||'";
        case TokenKind::Amp: return "'&'";
        case TokenKind::Pipe: return "'|'";
        case TokenKind::Bang: return "'!'";
        case TokenKind::Eof: return "end of file";
    }
    return "?";
}

namespace {

const std::map<std::string_view, TokenKind>& keyword_table() {
    static const std::map<std::string_view, TokenKind> table = {
        {"int", TokenKind::KwInt},         {"float", TokenKind::KwFloat},
        {"bool", TokenKind::KwBool},       {"string", TokenKind::KwString},
        {"const", TokenKind::KwConst},     {"if", TokenKind::KwIf},
        {"else", TokenKind::KwElse},       {"while", TokenKind::KwWhile},
        {"return", TokenKind::KwReturn},   {"assert", TokenKind::KwAssert},
        {"test", TokenKind::KwTest},       {"select", TokenKind::KwSelect},
        {"default", TokenKind::KwDefault}, {"true", TokenKind::KwTrue},
        {"false", TokenKind::KwFalse},
    };
    return table;
}

struct Lexer {
    const std::string& text;
    uint32_t file;
    uint32_t pos = 0;
    LexResult out;

    bool at_end() const { return pos >= text.size(); }
    char peek(uint32_t ahead = 0) const {
        return pos + ahead < text.size() ? text[pos + ahead] : '\0';
    }

    void error(uint32_t begin, std::string msg) {
        out.diagnostics.push_back({Severity::Error, {file, begin, pos}, std::move(msg)});
    }

    void push(TokenKind kind, uint32_t begin) {
        Token t;
        t.kind = kind;
        t.span = {file, begin, pos};
        out.tokens.push_back(std::move(t));
    }

    void skip_trivia() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    void lex_number(uint32_t begin) {
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        bool is_float = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            is_float = true;
            ++pos;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        }
        if (peek() == 'e' || peek() == 'E') {
            uint32_t mark = pos;
            ++pos;
            if (peek() == '+' || peek() == '-') ++pos;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                is_float = true;
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            } else {
                pos = mark;  // bare 'e' belongs to a following identifier
            }
        }
        std::string_view lexeme(text.data() + begin, pos - begin);
        Token t;
        t.span = {file, begin, pos};
        if (is_float) {
            t.kind = TokenKind::FloatLit;
            auto r = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), t.float_value);
            if (r.ec != std::errc()) error(begin, "malformed float literal");
        } else {
            t.kind = TokenKind::IntLit;
            auto r = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), t.int_value);
            if (r.ec != std::errc()) error(begin, "integer literal out of range");
        }
        out.tokens.push_back(std::move(t));
    }

    void lex_string(uint32_t begin) {
        ++pos;  // opening quote
        std::string value;
        while (!at_end() && peek() != '"' && peek() != '\n') {
            char c = peek();
            if (c == '\\') {
                ++pos;
                char esc = peek();
                switch (esc) {
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case '\\': value += '\\'; break;
                    case '"': value += '"'; break;
                    default:
                        ++pos;
                        error(begin, std::string("unknown escape sequence '\\") + esc + "'");
                        continue;
                }
                ++pos;
            } else {
                value += c;
                ++pos;
            }
        }
        if (at_end() || peek() == '\n') {
            error(begin, "unterminated string literal");
        } else {
            ++pos;  // closing quote
        }
        Token t;
        t.kind = TokenKind::StringLit;
        t.span = {file, begin, pos};
        t.string_value = std::move(value);
        out.tokens.push_back(std::move(t));
    }

    void lex_ident(uint32_t begin) {
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos;
        std::string_view lexeme(text.data() + begin, pos - begin);
        auto it = keyword_table().find(lexeme);
        if (it != keyword_table().end()) {
            push(it->second, begin);
            return;
        }
        Token t;
        t.kind = TokenKind::Ident;
        t.span = {file, begin, pos};
        t.string_value = std::string(lexeme);
        out.tokens.push_back(std::move(t));
    }

    void run() {
        while (true) {
            skip_trivia();
            if (at_end()) break;
            uint32_t begin = pos;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number(begin);
            } else if (c == '"') {
                lex_string(begin);
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                lex_ident(begin);
            } else {
                ++pos;
                switch (c) {
                    case '(': push(TokenKind::LParen, begin); break;
                    case ')': push(TokenKind::RParen, begin); break;
                    case '{': push(TokenKind::LBrace, begin); break;
                    case '}': push(TokenKind::RBrace, begin); break;
                    case ',': push(TokenKind::Comma, begin); break;
                    case ';': push(TokenKind::Semi, begin); break;
                    case ':': push(TokenKind::Colon, begin); break;
                    case '?': push(TokenKind::Question, begin); break;
                    case '+': push(TokenKind::Plus, begin); break;
                    case '-': push(TokenKind::Minus, begin); break;
                    case '*': push(TokenKind::Star, begin); break;
                    case '/': push(TokenKind::Slash, begin); break;
                    case '%': push(TokenKind::Percent, begin); break;
                    case '=':
                        if (peek() == '=') {
                            ++pos;
                            push(TokenKind::EqEq, begin);
                        } else {
                            push(TokenKind::Assign, begin);
                        }
                        break;
                    case '<':
                        if (peek() == '=') {
                            ++pos;
                            push(TokenKind::Le, begin);
                        } else {
                            push(TokenKind::Lt, begin);
                        }
                        break;
                    case '>':
                        if (peek() == '=') {
                            ++pos;
                            push(TokenKind::Ge, begin);
                        } else {
                            push(TokenKind::Gt, begin);
                        }
                        break;
                    case '!':
                        if (peek() == '=') {
                            ++pos;
                            push(TokenKind::NotEq, begin);
                        } else {
                            push(TokenKind::Bang, begin);
                        }
                        break;
                    case '&':
                        if (peek() == '&') {
                            ++pos;
                            push(TokenKind::AmpAmp, begin);
                        } else {
                            push(TokenKind::Amp, begin);
                        }
                        break;
                    case '|':
                        if (peek() == '|') {
                            ++pos;
                            push(TokenKind::PipePipe, begin);
                        } else {
                            push(TokenKind::Pipe, begin);
                        }
                        break;
                    default:
                        error(begin, std::string("unexpected character '") + c + "'");
                        break;
                }
            }
        }
        push(TokenKind::Eof, pos);
    }
};

}  // namespace

LexResult tokenize(const SourceSet& sources, uint32_t file) {
    Lexer lexer{sources.file(file).text, file, 0, {}};
    lexer.run();
    return std::move(lexer.out);
}

}  // namespace mutamatic
