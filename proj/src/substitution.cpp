#include "logicbench/substitution.hpp"

#include <algorithm>
#include <unordered_map>

#include "logicbench/syntax.hpp"

namespace logicbench {

bool Substitution::is_idempotent() const {
    for (const auto& [v, t] : bindings_) {
        for (const auto& [w, u] : bindings_)
            if (occurs_in(v, u)) return false;
        (void)t;
    }
    return true;
}

Substitution Substitution::restrict_to(std::span<const Variable> vars) const {
    Map out;
    for (const auto& v : vars)
        if (auto* t = find(v)) out.emplace(v, *t);
    return Substitution(std::move(out));
}

Term apply(const Substitution& s, const Term& t) {
    if (t.is_ground() || s.empty()) return t;
    if (t.is_var()) {
        auto* bound = s.find(t.var());
        return bound ? *bound : t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const Term& a : t.args()) {
        args.push_back(apply(s, a));
        changed = changed || args.back().identity() != a.identity();
    }
    if (!changed) return t;
    return Term::compound(t.functor(), std::move(args));
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
    Substitution::Map out;
    for (const auto& [v, t] : s1.bindings()) {
        Term image = apply(s2, t);
        if (image.is_var() && image.var() == v) continue;
        out.emplace(v, std::move(image));
    }
    for (const auto& [v, t] : s2.bindings())
        if (!s1.binds(v)) out.emplace(v, t);
    return Substitution(std::move(out));
}

namespace {

// Triangular bindings during unification; resolved to an idempotent map at the end.
class Unifier {
public:
    explicit Unifier(UnifyOptions opts) : opts_(opts) {}

    const Term& walk(const Term& t) const {
        const Term* cur = &t;
        while (cur->is_var()) {
            auto it = bound_.find(cur->var());
            if (it == bound_.end()) break;
            cur = &it->second;
        }
        return *cur;
    }

    bool occurs(const Variable& v, const Term& t) const {
        if (t.is_ground()) return false;
        const Term& w = walk(t);
        if (w.is_var()) return w.var() == v;
        for (const Term& a : w.args())
            if (occurs(v, a)) return true;
        return false;
    }

    bool unify(const Term& a0, const Term& b0) {
        std::vector<std::pair<Term, Term>> work{{a0, b0}};
        while (!work.empty()) {
            auto [x, y] = std::move(work.back());
            work.pop_back();
            const Term a = walk(x);
            const Term b = walk(y);
            if (a.identity() == b.identity()) continue;
            if (a.is_var() && b.is_var() && a.var() == b.var()) continue;
            // Between two variables bind the younger one, so answers keep the query's names.
            if (a.is_var() && b.is_var() && a.var().version < b.var().version) {
                bound_.emplace(b.var(), a);
                order_.push_back(b.var());
                continue;
            }
            if (a.is_var()) {
                if (opts_.occurs_check && occurs(a.var(), b)) return false;
                bound_.emplace(a.var(), b);
                order_.push_back(a.var());
                continue;
            }
            if (b.is_var()) {
                if (opts_.occurs_check && occurs(b.var(), a)) return false;
                bound_.emplace(b.var(), a);
                order_.push_back(b.var());
                continue;
            }
            if (a.is_ground() && b.is_ground()) {
                if (!(a == b)) return false;
                continue;
            }
            if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
            for (std::size_t i = a.arity(); i-- > 0;) work.emplace_back(a.arg(i), b.arg(i));
        }
        return true;
    }

    // A variable met again while being expanded is left in place, so a cycle
    // admitted without the occurs check ends as a finite, non-idempotent binding.
    Term resolve(const Term& t) const {
        if (t.is_ground()) return t;
        if (t.is_var()) {
            auto it = bound_.find(t.var());
            if (it == bound_.end()) return t;
            if (std::find(active_.begin(), active_.end(), t.var()) != active_.end()) return t;
            active_.push_back(t.var());
            Term r = resolve(it->second);
            active_.pop_back();
            return r;
        }
        std::vector<Term> args;
        args.reserve(t.arity());
        for (const Term& a : t.args()) args.push_back(resolve(a));
        return Term::compound(t.functor(), std::move(args));
    }

    Substitution result() const {
        Substitution::Map out;
        for (const auto& v : order_) out.emplace(v, resolve(Term::variable(v)));
        return Substitution(std::move(out));
    }

private:
    UnifyOptions opts_;
    std::unordered_map<Variable, Term, VariableHash> bound_;
    std::vector<Variable> order_;
    mutable std::vector<Variable> active_;
};

bool match_into(const Term& p, const Term& t, Substitution::Map& out) {
    if (p.is_var()) {
        auto [it, inserted] = out.emplace(p.var(), t);
        return inserted || it->second == t;
    }
    if (t.is_var()) return false;
    if (p.functor() != t.functor() || p.arity() != t.arity()) return false;
    if (p.is_ground()) return p == t;
    for (std::size_t i = 0; i < p.arity(); ++i)
        if (!match_into(p.arg(i), t.arg(i), out)) return false;
    return true;
}

} // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, UnifyOptions opts) {
    Unifier u(opts);
    if (!u.unify(a, b)) return std::nullopt;
    return u.result();
}

std::optional<Substitution> unify_all(std::span<const Term> lhs, std::span<const Term> rhs, UnifyOptions opts) {
    if (lhs.size() != rhs.size()) return std::nullopt;
    Unifier u(opts);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (!u.unify(lhs[i], rhs[i])) return std::nullopt;
    return u.result();
}

std::optional<Substitution> match(const Term& pattern, const Term& instance) {
    Substitution::Map out;
    if (!match_into(pattern, instance, out)) return std::nullopt;
    return Substitution(std::move(out));
}

bool subsumes(const Term& general, const Term& instance) {
    // Rename the general term apart so shared variable names cannot clash.
    const Term g = rename(general, 0xFFFFFFF0u);
    return match(g, instance).has_value();
}

std::string canonical_form(const Term& t) {
    Substitution::Map m;
    std::uint32_t k = 0;
    for (const auto& v : variables_of(t)) m.emplace(v, Term::variable("_" + std::to_string(k++)));
    return to_text(apply(Substitution(std::move(m)), t));
}

bool is_variant(const Term& a, const Term& b) { return canonical_form(a) == canonical_form(b); }

std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += to_text(Term::variable(v)) + "/" + to_text(t);
    }
    return out + "}";
}

} // namespace logicbench
