#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logicbench/term.hpp"

namespace logicbench {

/// Finite map from variables to terms. Results of unify() and compose() over
/// unifiers are idempotent: no bound variable occurs in any binding.
class Substitution {
public:
    using Map = std::map<Variable, Term>;

    Substitution() = default;
    explicit Substitution(Map bindings) : bindings_(std::move(bindings)) {}
    Substitution(std::initializer_list<std::pair<const Variable, Term>> init) : bindings_(init) {}

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const Map& bindings() const { return bindings_; }

    const Term* find(const Variable& v) const {
        auto it = bindings_.find(v);
        return it == bindings_.end() ? nullptr : &it->second;
    }
    bool binds(const Variable& v) const { return bindings_.count(v) != 0; }

    /// Adds or replaces a binding; does not restore idempotence.
    void bind(const Variable& v, Term t) { bindings_.insert_or_assign(v, std::move(t)); }

    bool is_idempotent() const;

    /// Keeps only bindings for the given variables.
    Substitution restrict_to(std::span<const Variable> vars) const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    Map bindings_;
};

/// Simultaneous replacement of bound variables. Ground input is returned unchanged.
Term apply(const Substitution& s, const Term& t);

/// apply(compose(s1, s2), t) == apply(s2, apply(s1, t)) for all t.
Substitution compose(const Substitution& s1, const Substitution& s2);

struct UnifyOptions {
    /// Only for performance experiments; the verifier always keeps it on.
    /// Without it a cyclic problem such as X = s(X) yields the binding X -> s(X).
    bool occurs_check = true;
};

/// Most general unifier, or nullopt when the terms do not unify.
std::optional<Substitution> unify(const Term& a, const Term& b, UnifyOptions opts = {});

/// Unifies pairwise, left to right, as one simultaneous problem.
std::optional<Substitution> unify_all(std::span<const Term> lhs, std::span<const Term> rhs, UnifyOptions opts = {});

/// One-way matching: a substitution s over the variables of `pattern` with
/// apply(s, pattern) == instance, if any. Variables in `instance` are treated as constants.
std::optional<Substitution> match(const Term& pattern, const Term& instance);

/// True when `instance` is an instance of `general`.
bool subsumes(const Term& general, const Term& instance);

/// Printable form of `t` with variables renamed _0, _1, ... in order of first
/// occurrence. Two terms are variants iff their canonical forms are equal.
std::string canonical_form(const Term& t);
bool is_variant(const Term& a, const Term& b);

std::string to_string(const Substitution& s);

} // namespace logicbench
