#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logicbench/term.hpp"

namespace logicbench {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, SourcePos pos)
        : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

enum class TokenKind {
    Name,     // lowercase identifier, number or quoted atom
    Var,      // uppercase or '_' initial
    Punct,    // ( ) [ ] | , . :- -> ; - = ? /
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourcePos pos;
    bool quoted = false;
};

/// Edinburgh-style tokenizer with `%` line comments.
std::vector<Token> tokenize(std::string_view text);

/// Recursive-descent reader over a token vector. Shared by the term and program parsers.
class TokenReader {
public:
    explicit TokenReader(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    Token next();
    bool at_end() const { return peek().kind == TokenKind::End; }
    bool at_punct(std::string_view p) const { return peek().kind == TokenKind::Punct && peek().text == p; }
    void expect(std::string_view p);
    [[noreturn]] void fail(const std::string& msg) const;

    /// term := pair ['=' pair];  pair := primary ['-' pair]
    Term read_term();
    Term read_primary();
    std::vector<Term> read_args(std::string_view close);

    /// Fresh name for each `_` occurrence; reset per clause.
    void reset_anonymous() { anon_ = 0; }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t anon_ = 0;
};

/// Parses a single term; a trailing '.' is allowed.
Term parse_term(std::string_view text);

/// Parses "A1, A2, ..." as a query (list of atoms); a trailing '.' is allowed.
std::vector<Term> parse_query(std::string_view text);

/// Program-syntax rendering: list sugar, infix '-' (right-assoc) and '='.
std::string to_text(const Term& t);
std::string to_text(std::span<const Term> conjunction);

/// Quotes a name when it would not read back as the same atom.
std::string quote_name(const std::string& name);

} // namespace logicbench
