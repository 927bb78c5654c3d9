#include "logicbench/term.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace logicbench {

namespace detail {

struct TermNode {
    bool is_var = false;
    Variable var;           // valid when is_var
    Symbol functor;         // valid when !is_var
    std::vector<Term> args; // valid when !is_var
    bool ground = true;
    std::size_t size = 1;
    std::size_t hash = 0;
};

} // namespace detail

Symbol Symbol::intern(std::string_view name) {
    static std::mutex mu;
    static std::unordered_set<std::string> table;
    std::lock_guard lock(mu);
    auto [it, inserted] = table.emplace(name);
    return Symbol(&*it);
}

namespace sym {
Symbol nil() { static const Symbol s("[]"); return s; }
Symbol cons() { static const Symbol s("[|]"); return s; }
Symbol pair() { static const Symbol s("-"); return s; }
Symbol eq() { static const Symbol s("="); return s; }
Symbol true_() { static const Symbol s("true"); return s; }
Symbol false_() { static const Symbol s("false"); return s; }
Symbol nonvar() { static const Symbol s("nonvar"); return s; }
} // namespace sym

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const Term& nil_term() {
    static const Term t = Term::constant(sym::nil());
    return t;
}

} // namespace

Term::Term() : Term(nil_term()) {}

Term Term::variable(Variable v) {
    auto n = std::make_shared<detail::TermNode>();
    n->is_var = true;
    n->var = v;
    n->ground = false;
    n->size = 1;
    n->hash = mix(v.name.hash(), v.version + 1);
    return Term(std::move(n));
}

Term Term::variable(std::string_view name, std::uint32_t version) {
    return variable(Variable{Symbol(name), version});
}

Term Term::constant(Symbol name) { return compound(name, {}); }

Term Term::compound(Symbol functor, std::vector<Term> args) {
    auto n = std::make_shared<detail::TermNode>();
    n->functor = functor;
    std::size_t h = mix(functor.hash(), args.size());
    for (const Term& a : args) {
        n->ground = n->ground && a.is_ground();
        n->size += a.size();
        h = mix(h, a.hash());
    }
    n->hash = h;
    n->args = std::move(args);
    return Term(std::move(n));
}

Term Term::nil() { return nil_term(); }
Term Term::cons(Term head, Term tail) { return compound(sym::cons(), {std::move(head), std::move(tail)}); }
Term Term::pair(Term left, Term right) { return compound(sym::pair(), {std::move(left), std::move(right)}); }

Term Term::list(std::span<const Term> items, Term tail) {
    Term acc = std::move(tail);
    for (auto it = items.rbegin(); it != items.rend(); ++it) acc = cons(*it, acc);
    return acc;
}

bool Term::is_var() const { return node_->is_var; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::size() const { return node_->size; }

const Variable& Term::var() const {
    if (!node_->is_var) throw std::logic_error("Term::var on a compound term");
    return node_->var;
}

Symbol Term::functor() const {
    if (node_->is_var) throw std::logic_error("Term::functor on a variable");
    return node_->functor;
}

std::size_t Term::arity() const { return node_->is_var ? 0 : node_->args.size(); }

std::span<const Term> Term::args() const {
    if (node_->is_var) return {};
    return node_->args;
}

std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.hash != y.hash || x.is_var != y.is_var || x.size != y.size) return false;
    if (x.is_var) return x.var == y.var;
    if (x.functor != y.functor || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!(x.args[i] == y.args[i])) return false;
    return true;
}

// Variables before compounds; compounds by arity, then name, then arguments.
std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.is_var != y.is_var) return x.is_var ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.is_var) return x.var <=> y.var;
    if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
    if (auto c = x.functor <=> y.functor; c != 0) return c;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

bool is_proper_list(const Term& t) {
    const Term* cur = &t;
    while (cur->is_cons()) cur = &cur->arg(1);
    return cur->is_nil();
}

std::vector<Term> list_elements(const Term& t) {
    std::vector<Term> out;
    if (!is_proper_list(t)) return out;
    const Term* cur = &t;
    while (cur->is_cons()) {
        out.push_back(cur->arg(0));
        cur = &cur->arg(1);
    }
    return out;
}

void collect_variables(const Term& t, std::vector<Variable>& out) {
    if (t.is_ground()) return;
    if (t.is_var()) {
        for (const auto& v : out)
            if (v == t.var()) return;
        out.push_back(t.var());
        return;
    }
    for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<Variable> variables_of(const Term& t) {
    std::vector<Variable> out;
    collect_variables(t, out);
    return out;
}

bool occurs_in(const Variable& v, const Term& t) {
    if (t.is_ground()) return false;
    if (t.is_var()) return t.var() == v;
    for (const Term& a : t.args())
        if (occurs_in(v, a)) return true;
    return false;
}

Term rename(const Term& t, std::uint32_t version) {
    if (t.is_ground()) return t;
    if (t.is_var()) return Term::variable(Variable{t.var().name, version});
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(rename(a, version));
    return Term::compound(t.functor(), std::move(args));
}

std::string to_string(const Functor& f) { return f.name.name() + "/" + std::to_string(f.arity); }

void Signature::add_functors_of(const Term& t) {
    if (t.is_var()) return;
    add(Functor{t.functor(), t.arity()});
    for (const Term& a : t.args()) add_functors_of(a);
}

bool Signature::has_constant() const {
    for (const auto& f : functors_)
        if (f.arity == 0) return true;
    return false;
}

Signature Signature::parse(std::string_view text) {
    Signature sig;
    std::size_t pos = 0;
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        // "[|]/2" contains no comma, but "','/2" would; not supported.
        std::string_view item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (!item.empty()) {
            auto slash = item.rfind('/');
            if (slash == std::string_view::npos || slash == 0)
                throw std::invalid_argument("signature entry without /arity: " + std::string(item));
            auto name = trim(item.substr(0, slash));
            auto arity_text = trim(item.substr(slash + 1));
            std::size_t arity = 0;
            if (arity_text.empty()) throw std::invalid_argument("bad arity in " + std::string(item));
            for (char c : arity_text) {
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw std::invalid_argument("bad arity in " + std::string(item));
                arity = arity * 10 + static_cast<std::size_t>(c - '0');
            }
            sig.add(name, arity);
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return sig;
}

std::string to_string(const Signature& sig) {
    std::string out = "{";
    bool first = true;
    for (const auto& f : sig.functors()) {
        if (!first) out += ", ";
        first = false;
        out += to_string(f);
    }
    return out + "}";
}

} // namespace logicbench
