#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mutamatic/source.hpp"

namespace mutamatic {

enum class TokenKind {
    // literals and names
    Ident,
    IntLit,
    FloatLit,
    StringLit,
    // keywords
    KwInt,
    KwFloat,
    KwBool,
    KwString,
    KwConst,
    KwIf,
    KwElse,
    KwWhile,
    KwReturn,
    KwAssert,
    KwTest,
    KwSelect,
    KwDefault,
    KwTrue,
    KwFalse,
    // punctuation and operators
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Question,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    NotEq,
    AmpAmp,
    PipePipe,
    Amp,
    Pipe,
    Bang,
    Eof,
};

const char* token_kind_name(TokenKind k);

struct Token {
    TokenKind kind = TokenKind::Eof;
    SourceSpan span;
    // decoded payloads; valid for the matching literal kinds
    int64_t int_value = 0;
    double float_value = 0.0;
    std::string string_value;  // unescaped contents for StringLit, name for Ident
};

struct LexResult {
    std::vector<Token> tokens;  // always ends with Eof
    std::vector<Diagnostic> diagnostics;
};

// Tokenize one file of the source set. Token spans point into that file;
// the text between consecutive tokens is whitespace and comments only.
LexResult tokenize(const SourceSet& sources, uint32_t file);

}  // namespace mutamatic
