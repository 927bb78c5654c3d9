#include "logicbench/spec.hpp"

#include <mutex>
#include <stdexcept>

namespace logicbench {

namespace {

bool is_identical_pair(const Term& t) { return t.is_pair() && t.arg(0) == t.arg(1); }

bool is_numeral(const Term& t) {
    const Term* cur = &t;
    while (cur->has_functor(Symbol("s"), 1)) cur = &cur->arg(0);
    return cur->has_functor(Symbol("0"), 0);
}

template <typename Pred>
bool all_elements(const Term& t, Pred pred) {
    if (!is_proper_list(t)) return false;
    for (const Term& e : list_elements(t))
        if (!pred(e)) return false;
    return true;
}

} // namespace

bool in_L1(const Term& t) {
    const Term* cur = &t;
    bool found = false;
    for (; cur->is_cons(); cur = &cur->arg(1))
        if (is_identical_pair(cur->arg(0))) found = true;
    return found;
}

bool in_L1_0(const Term& t) {
    if (!t.is_cons() || !is_proper_list(t)) return false;
    bool found = false;
    for (const Term& e : list_elements(t)) {
        if (!e.is_pair()) return false;
        if (e.arg(0) == e.arg(1)) found = true;
    }
    return found;
}

bool in_L2(const Term& t) { return all_elements(t, in_L1); }
bool in_L2_0(const Term& t) { return all_elements(t, in_L1_0); }

bool is_truth_list(const Term& t) {
    return all_elements(t, [](const Term& e) { return e.has_functor(sym::true_(), 0) || e.has_functor(sym::false_(), 0); });
}

Specification::Specification(std::string name, std::map<Predicate, Membership> table, Signature contributed)
    : name_(std::move(name)), table_(std::move(table)), sig_(std::move(contributed)) {}

bool Specification::contains(const Term& atom) const {
    if (!atom.is_ground()) throw std::invalid_argument("specification membership needs a ground atom: " + to_text(atom));
    auto it = table_.find(predicate_of(atom));
    return it != table_.end() && it->second(atom);
}

std::vector<Predicate> Specification::predicates() const {
    std::vector<Predicate> out;
    for (const auto& [p, _] : table_) out.push_back(p);
    return out;
}

std::vector<Term> Specification::enumerate(HerbrandUniverse& universe, std::size_t bound) const {
    std::vector<Term> out;
    for (const auto& [p, member] : table_) {
        std::vector<Term> vars;
        for (std::size_t i = 0; i < p.arity; ++i) vars.push_back(Term::variable("X" + std::to_string(i)));
        const Term pattern = p.arity == 0 ? Term::constant(p.name) : Term::compound(p.name, vars);
        // Group by atom size so output is size-ordered within a predicate.
        std::vector<std::vector<Term>> by_size(bound + 1);
        const Term atoms[] = {pattern};
        for_each_bounded_grounding(universe, atoms, bound, [&](const Substitution& s) {
            Term a = apply(s, pattern);
            if (member(a)) by_size[atom_size(a)].push_back(std::move(a));
            return true;
        });
        for (auto& v : by_size)
            for (auto& a : v) out.push_back(std::move(a));
    }
    return out;
}

std::vector<Term> Specification::enumerate(const Signature& sig, std::size_t bound) const {
    HerbrandUniverse u(sig);
    return enumerate(u, bound);
}

Specification Specification::with(const Predicate& p, Membership m, std::string name) const {
    Specification out = *this;
    out.table_[p] = std::move(m);
    if (!name.empty()) out.name_ = std::move(name);
    return out;
}

Specification Specification::unite(const Specification& a, const Specification& b, std::string name) {
    Specification out = a;
    out.name_ = name.empty() ? a.name_ + "+" + b.name_ : std::move(name);
    out.sig_.merge(b.sig_);
    for (const auto& [p, m] : b.table_) {
        auto it = out.table_.find(p);
        if (it == out.table_.end()) {
            out.table_[p] = m;
            continue;
        }
        Membership left = it->second;
        it->second = [left, m](const Term& t) { return left(t) || m(t); };
    }
    return out;
}

std::optional<Term> pair_inclusion_violation(const SpecPair& pair, const Signature& sig, std::size_t bound) {
    for (const Term& a : pair.for_completeness.enumerate(sig, bound))
        if (!pair.for_correctness.contains(a)) return a;
    return std::nullopt;
}

namespace {

Predicate pred(const char* name, std::size_t arity) { return Predicate{Symbol(name), arity}; }

Signature truth_signature() { return Signature::parse("true/0, false/0, []/0, [|]/2, -/2"); }

// [p-v|s]
Term pair_cons(const Term& p, const Term& v, const Term& s) { return Term::cons(Term::pair(p, v), s); }

using ListTest = bool (*)(const Term&);

std::map<Predicate, Specification::Membership> sat_core(ListTest l1, ListTest l2) {
    std::map<Predicate, Specification::Membership> t;
    t[pred("=", 2)] = [](const Term& a) { return a.arg(0) == a.arg(1); };
    t[pred("sat_cnf", 1)] = [l2](const Term& a) { return l2(a.arg(0)); };
    t[pred("sat_cl", 1)] = [l1](const Term& a) { return l1(a.arg(0)); };
    return t;
}

std::map<Predicate, Specification::Membership> sat_aux(std::map<Predicate, Specification::Membership> t, ListTest l1) {
    t[pred("sat_cl3", 3)] = [l1](const Term& a) { return l1(pair_cons(a.arg(2), a.arg(1), a.arg(0))); };
    auto five = [l1](const Term& a) {
        return l1(pair_cons(a.arg(1), a.arg(0), pair_cons(a.arg(3), a.arg(2), a.arg(4))));
    };
    t[pred("sat_cl5", 5)] = five;
    t[pred("sat_cl5a", 5)] = five;
    return t;
}

std::map<Predicate, Specification::Membership> sat_top(std::map<Predicate, Specification::Membership> t, ListTest l2) {
    t[pred("sat", 2)] = [l2](const Term& a) { return l2(a.arg(0)) && is_truth_list(a.arg(1)); };
    t[pred("tflist", 1)] = [](const Term& a) { return is_truth_list(a.arg(0)); };
    t[pred("tf", 1)] = [](const Term& a) {
        return a.arg(0).has_functor(sym::true_(), 0) || a.arg(0).has_functor(sym::false_(), 0);
    };
    return t;
}

} // namespace

Specification spec_S1() { return Specification("S1", sat_core(in_L1, in_L2), truth_signature()); }

Specification spec_S1_prime() {
    return spec_S1().with(pred("sat_cl", 1), [](const Term&) { return true; }, "S1_PRIME");
}

Specification spec_S2() { return Specification("S2", sat_aux(sat_core(in_L1, in_L2), in_L1), truth_signature()); }

Specification spec_S2_0() {
    return Specification("S2_0", sat_aux(sat_core(in_L1_0, in_L2_0), in_L1_0), truth_signature());
}

Specification spec_S3() {
    return Specification("S3", sat_top(sat_aux(sat_core(in_L1, in_L2), in_L1), in_L2), truth_signature());
}

Specification spec_S3_0() {
    return Specification("S3_0", sat_top(sat_aux(sat_core(in_L1_0, in_L2_0), in_L1_0), in_L2_0), truth_signature());
}

Specification spec_cssld_counterexample() {
    std::map<Predicate, Specification::Membership> t;
    t[pred("q", 1)] = [](const Term& a) { return is_numeral(a.arg(0)); };
    t[pred("p", 2)] = [](const Term& a) {
        const Term& y = a.arg(0);
        const Term& n = a.arg(1);
        if (n.has_functor(Symbol("0"), 0)) return true;
        return (y.has_functor(Symbol("a"), 0) || y.has_functor(Symbol("b"), 0)) && is_numeral(n);
    };
    return Specification("S_CSSLD", std::move(t), Signature::parse("0/0, s/1, a/0, b/0"));
}

Specification spec_appendix_example() {
    std::map<Predicate, Specification::Membership> t;
    t[pred("p", 1)] = [](const Term& a) { return is_numeral(a.arg(0)); };
    t[pred("q", 1)] = [](const Term& a) { return a.arg(0).has_functor(Symbol("0"), 0); };
    return Specification("S_APPENDIX", std::move(t), Signature::parse("0/0, s/1"));
}

namespace {

struct Registry {
    std::mutex mu;
    std::map<std::string, Specification> user;
};

Registry& registry() {
    static Registry r;
    return r;
}

const std::map<std::string, Specification (*)()>& builtins() {
    static const std::map<std::string, Specification (*)()> m = {
        {"S1", spec_S1},     {"S1_PRIME", spec_S1_prime}, {"S2", spec_S2},
        {"S2_0", spec_S2_0}, {"S3", spec_S3},             {"S3_0", spec_S3_0},
        {"S_CSSLD", spec_cssld_counterexample},           {"S_APPENDIX", spec_appendix_example},
    };
    return m;
}

} // namespace

Specification spec_by_name(std::string_view name) {
    {
        auto& r = registry();
        std::lock_guard lock(r.mu);
        auto it = r.user.find(std::string(name));
        if (it != r.user.end()) return it->second;
    }
    auto it = builtins().find(std::string(name));
    if (it == builtins().end()) {
        std::string known;
        for (const auto& n : spec_names()) known += (known.empty() ? "" : ", ") + n;
        throw std::out_of_range("unknown specification '" + std::string(name) + "' (known: " + known + ")");
    }
    return it->second();
}

std::vector<std::string> spec_names() {
    std::vector<std::string> out;
    for (const auto& [n, _] : builtins()) out.push_back(n);
    auto& r = registry();
    std::lock_guard lock(r.mu);
    for (const auto& [n, _] : r.user)
        if (!builtins().count(n)) out.push_back(n);
    return out;
}

void register_spec(const Specification& s) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    r.user.insert_or_assign(s.name(), s);
}

} // namespace logicbench
