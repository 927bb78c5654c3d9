#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logicbench {

/// Interned identifier. Two symbols are equal iff their spelling is equal.
/// Interning is thread-safe; reading the spelling needs no lock.
class Symbol {
public:
    Symbol() : Symbol(intern("")) {}
    explicit Symbol(std::string_view name) : Symbol(intern(name)) {}

    const std::string& name() const { return *name_; }

    friend bool operator==(Symbol a, Symbol b) { return a.name_ == b.name_; }
    /// Ordered by spelling so that all sorted output is reproducible.
    friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
        if (a.name_ == b.name_) return std::strong_ordering::equal;
        return *a.name_ <=> *b.name_;
    }

    std::size_t hash() const { return std::hash<const void*>{}(name_); }

private:
    explicit Symbol(const std::string* p) : name_(p) {}
    static Symbol intern(std::string_view name);
    const std::string* name_;
};

namespace sym {
Symbol nil();    // "[]"
Symbol cons();   // "[|]"
Symbol pair();   // "-"
Symbol eq();     // "="
Symbol true_();  // "true"
Symbol false_(); // "false"
Symbol nonvar(); // "nonvar"
} // namespace sym

/// A logical variable: source name plus a renaming generation. Variables read
/// from program text have version 0; renamed-apart rule copies get fresh versions.
struct Variable {
    Symbol name;
    std::uint32_t version = 0;

    friend bool operator==(const Variable&, const Variable&) = default;
    friend std::strong_ordering operator<=>(const Variable& a, const Variable& b) {
        if (auto c = a.name <=> b.name; c != 0) return c;
        return a.version <=> b.version;
    }
};

struct VariableHash {
    std::size_t operator()(const Variable& v) const { return v.name.hash() * 31u + v.version; }
};

class Term;

namespace detail {
struct TermNode;
}

/// Immutable first-order term with structural sharing. Copying is cheap.
class Term {
public:
    /// The empty list "[]"; lets Term be default-constructible.
    Term();

    static Term variable(Variable v);
    static Term variable(std::string_view name, std::uint32_t version = 0);
    static Term constant(Symbol name);
    static Term constant(std::string_view name) { return constant(Symbol(name)); }
    static Term compound(Symbol functor, std::vector<Term> args);
    static Term compound(std::string_view functor, std::vector<Term> args) {
        return compound(Symbol(functor), std::move(args));
    }

    static Term nil();
    static Term cons(Term head, Term tail);
    static Term pair(Term left, Term right);
    static Term list(std::span<const Term> items, Term tail = nil());

    bool is_var() const;
    bool is_compound() const { return !is_var(); }
    bool is_constant() const { return is_compound() && arity() == 0; }
    /// Cached at construction.
    bool is_ground() const;
    /// Node count: every functor occurrence, constant and variable counts 1.
    std::size_t size() const;

    const Variable& var() const;
    Symbol functor() const;
    std::size_t arity() const;
    std::span<const Term> args() const;
    const Term& arg(std::size_t i) const { return args()[i]; }

    bool has_functor(Symbol f, std::size_t n) const {
        return is_compound() && functor() == f && arity() == n;
    }
    bool is_nil() const { return has_functor(sym::nil(), 0); }
    bool is_cons() const { return has_functor(sym::cons(), 2); }
    bool is_pair() const { return has_functor(sym::pair(), 2); }

    /// Identity of the shared node; equal pointers imply equal terms.
    const void* identity() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

    std::size_t hash() const;

private:
    explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::TermNode> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// "[]" or "[|]"(h, t) with t a proper list. Terms like [a,a|X] or [a,a|a] are not lists.
bool is_proper_list(const Term& t);

/// Elements of a proper list; empty when `t` is not one.
std::vector<Term> list_elements(const Term& t);

/// Variables of `t` in order of first occurrence (depth-first, left to right).
std::vector<Variable> variables_of(const Term& t);
void collect_variables(const Term& t, std::vector<Variable>& out);

bool occurs_in(const Variable& v, const Term& t);

/// Copy of `t` with every variable moved to generation `version`.
Term rename(const Term& t, std::uint32_t version);

/// Function symbol with arity.
struct Functor {
    Symbol name;
    std::size_t arity = 0;

    friend bool operator==(const Functor&, const Functor&) = default;
    friend std::strong_ordering operator<=>(const Functor&, const Functor&) = default;
};

std::string to_string(const Functor& f);

/// A finite alphabet of function symbols. Must contain a constant for the
/// Herbrand universe to be nonempty.
class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<Functor> fs) : functors_(fs) {}

    void add(Functor f) { functors_.insert(f); }
    void add(std::string_view name, std::size_t arity) { add(Functor{Symbol(name), arity}); }
    void merge(const Signature& other) { functors_.insert(other.functors_.begin(), other.functors_.end()); }
    /// Adds every function symbol occurring in `t` (not counting variables).
    void add_functors_of(const Term& t);

    bool contains(const Functor& f) const { return functors_.count(f) != 0; }
    bool has_constant() const;
    bool empty() const { return functors_.empty(); }
    const std::set<Functor>& functors() const { return functors_; }

    /// Parses "a/0, s/1, -/2". Throws std::invalid_argument on bad input.
    static Signature parse(std::string_view text);

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::set<Functor> functors_;
};

std::string to_string(const Signature& sig);

} // namespace logicbench

template <>
struct std::hash<logicbench::Term> {
    std::size_t operator()(const logicbench::Term& t) const { return t.hash(); }
};
