#include "logicbench/syntax.hpp"

#include <cctype>

namespace logicbench {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    SourcePos pos;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token tok;
        tok.pos = pos;
        if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            tok.kind = TokenKind::Name;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            tok.kind = TokenKind::Var;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (c == '\'') {
            std::string name;
            advance(1);
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\'') {
                    if (i + 1 < text.size() && text[i + 1] == '\'') {
                        name += '\'';
                        advance(2);
                        continue;
                    }
                    advance(1);
                    closed = true;
                    break;
                }
                if (text[i] == '\\' && i + 1 < text.size()) {
                    name += text[i + 1];
                    advance(2);
                    continue;
                }
                name += text[i];
                advance(1);
            }
            if (!closed) throw ParseError("unterminated quoted atom", tok.pos);
            tok.kind = TokenKind::Name;
            tok.text = std::move(name);
            tok.quoted = true;
        } else if (text.substr(i, 2) == ":-" || text.substr(i, 2) == "->") {
            tok.kind = TokenKind::Punct;
            tok.text = std::string(text.substr(i, 2));
            advance(2);
        } else if (std::string_view("()[]|,.;-=?/").find(c) != std::string_view::npos) {
            tok.kind = TokenKind::Punct;
            tok.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.pos = pos;
    out.push_back(end);
    return out;
}

const Token& TokenReader::peek(std::size_t ahead) const {
    std::size_t k = pos_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
}

Token TokenReader::next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
}

void TokenReader::expect(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    next();
}

void TokenReader::fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.pos);
}

Term TokenReader::read_term() {
    std::vector<Term> chain{read_primary()};
    while (at_punct("-")) {
        next();
        chain.push_back(read_primary());
    }
    Term lhs = chain.back();
    for (std::size_t k = chain.size() - 1; k-- > 0;) lhs = Term::pair(chain[k], lhs);
    if (!at_punct("=")) return lhs;
    next();
    std::vector<Term> rchain{read_primary()};
    while (at_punct("-")) {
        next();
        rchain.push_back(read_primary());
    }
    Term rhs = rchain.back();
    for (std::size_t k = rchain.size() - 1; k-- > 0;) rhs = Term::pair(rchain[k], rhs);
    if (at_punct("=")) fail("'=' is non-associative; add parentheses");
    return Term::compound(sym::eq(), {lhs, rhs});
}

std::vector<Term> TokenReader::read_args(std::string_view close) {
    std::vector<Term> args{read_term()};
    while (at_punct(",")) {
        next();
        args.push_back(read_term());
    }
    expect(close);
    return args;
}

Term TokenReader::read_primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::Var) {
        Token v = next();
        if (v.text == "_") return Term::variable("_G" + std::to_string(anon_++));
        return Term::variable(v.text);
    }
    if (t.kind == TokenKind::Name) {
        Token n = next();
        if (at_punct("(")) {
            next();
            return Term::compound(n.text, read_args(")"));
        }
        return Term::constant(n.text);
    }
    if (at_punct("(")) {
        next();
        Term inner = read_term();
        expect(")");
        return inner;
    }
    if (at_punct("[")) {
        next();
        if (at_punct("]")) {
            next();
            return Term::nil();
        }
        std::vector<Term> items{read_term()};
        while (at_punct(",")) {
            next();
            items.push_back(read_term());
        }
        Term tail = Term::nil();
        if (at_punct("|")) {
            next();
            tail = read_term();
        }
        expect("]");
        return Term::list(items, tail);
    }
    // Operators used as plain atoms, e.g. '-'(a,b) written as -(a,b).
    if (at_punct("-") || at_punct("=")) {
        Token op = next();
        if (at_punct("(")) {
            next();
            return Term::compound(op.text, read_args(")"));
        }
        return Term::constant(op.text);
    }
    fail("expected a term");
}

Term parse_term(std::string_view text) {
    TokenReader r(tokenize(text));
    Term t = r.read_term();
    if (r.at_punct(".")) r.next();
    if (!r.at_end()) r.fail("unexpected trailing input");
    return t;
}

std::vector<Term> parse_query(std::string_view text) {
    TokenReader r(tokenize(text));
    std::vector<Term> goals{r.read_term()};
    while (r.at_punct(",")) {
        r.next();
        goals.push_back(r.read_term());
    }
    if (r.at_punct(".")) r.next();
    if (!r.at_end()) r.fail("unexpected trailing input");
    return goals;
}

std::string quote_name(const std::string& name) {
    if (name == "[]") return name;
    bool plain = !name.empty() &&
                 (std::islower(static_cast<unsigned char>(name[0])) || std::isdigit(static_cast<unsigned char>(name[0])));
    if (plain) {
        bool digits = std::isdigit(static_cast<unsigned char>(name[0]));
        for (char c : name) {
            if (!is_ident_char(c)) plain = false;
            if (digits && !std::isalnum(static_cast<unsigned char>(c))) plain = false;
        }
    }
    if (plain) return name;
    std::string out = "'";
    for (char c : name) {
        if (c == '\'') out += "''";
        else if (c == '\\') out += "\\\\";
        else out += c;
    }
    return out + "'";
}

namespace {

void write(const Term& t, std::string& out);

bool is_eq(const Term& t) { return t.has_functor(sym::eq(), 2); }

void write_operand(const Term& t, std::string& out, bool wrap_pair) {
    bool wrap = is_eq(t) || (wrap_pair && t.is_pair());
    if (wrap) out += '(';
    write(t, out);
    if (wrap) out += ')';
}

void write(const Term& t, std::string& out) {
    if (t.is_var()) {
        out += t.var().name.name();
        if (t.var().version != 0) out += "_" + std::to_string(t.var().version);
        return;
    }
    if (t.is_cons()) {
        out += '[';
        const Term* cur = &t;
        bool first = true;
        while (cur->is_cons()) {
            if (!first) out += ',';
            first = false;
            write(cur->arg(0), out);
            cur = &cur->arg(1);
        }
        if (!cur->is_nil()) {
            out += '|';
            write(*cur, out);
        }
        out += ']';
        return;
    }
    if (t.is_pair()) {
        write_operand(t.arg(0), out, true);
        out += '-';
        write_operand(t.arg(1), out, false);
        return;
    }
    if (is_eq(t)) {
        write_operand(t.arg(0), out, false);
        out += " = ";
        write_operand(t.arg(1), out, false);
        return;
    }
    out += quote_name(t.functor().name());
    if (t.arity() == 0) return;
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        write(t.arg(i), out);
    }
    out += ')';
}

} // namespace

std::string to_text(const Term& t) {
    std::string out;
    write(t, out);
    return out;
}

std::string to_text(std::span<const Term> conjunction) {
    std::string out;
    for (std::size_t i = 0; i < conjunction.size(); ++i) {
        if (i) out += ", ";
        write(conjunction[i], out);
    }
    return out;
}

} // namespace logicbench
