#include "logicbench/verifier.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>
#include <stdexcept>

namespace logicbench {

std::optional<std::uint64_t> list_norm(const Term& t) {
    std::uint64_t total = 0;
    const Term* cur = &t;
    while (cur->is_cons()) {
        auto h = list_norm(cur->arg(0));
        if (!h) return std::nullopt;
        total += *h;
        cur = &cur->arg(1);
    }
    if (cur->is_var()) return std::nullopt;
    return total + 1;
}

std::optional<std::uint64_t> list_size(const Term& t) {
    std::uint64_t n = 0;
    const Term* cur = &t;
    for (; cur->is_cons(); cur = &cur->arg(1)) ++n;
    if (cur->is_var()) return std::nullopt;
    return n;
}

LevelMapping::LevelMapping(std::string name, AtomLevel atom_level) : name_(std::move(name)), atom_(std::move(atom_level)) {}

namespace {

using Level = std::optional<std::uint64_t>;

CheckReport new_report(std::string check, std::string subject, std::string against) {
    CheckReport r;
    r.check = std::move(check);
    r.subject = std::move(subject);
    r.against = std::move(against);
    return r;
}

Level affine(std::uint64_t k, Level x, std::uint64_t c) {
    if (!x) return std::nullopt;
    return k * *x + c;
}

bool is_atom_of(const Term& a, const char* name, std::size_t arity) {
    return !a.is_var() && a.arity() == arity && a.functor().name() == name;
}

} // namespace

LevelMapping LevelMapping::p1() {
    return LevelMapping("P1", [](const Term& a) -> Level {
        if (is_atom_of(a, "sat_cnf", 1) || is_atom_of(a, "sat_cl", 1)) return list_norm(a.arg(0));
        if (a.has_functor(sym::eq(), 2)) return 0;
        return std::nullopt;
    });
}

LevelMapping LevelMapping::p3() {
    return LevelMapping("P3", [](const Term& a) -> Level {
        if (a.is_var()) return std::nullopt;
        if (is_atom_of(a, "sat", 2)) {
            auto t = list_norm(a.arg(0));
            auto u = list_size(a.arg(1));
            if (!t || !u) return std::nullopt;
            return std::max(3 * *t, *u) + 2;
        }
        if (is_atom_of(a, "sat_cnf", 1) || is_atom_of(a, "sat_cl", 1) || is_atom_of(a, "sat_cl3", 3))
            return affine(3, list_norm(a.arg(0)), 1);
        if (is_atom_of(a, "sat_cl5", 5)) return affine(3, list_norm(a.arg(4)), 3);
        if (is_atom_of(a, "sat_cl5a", 5)) return affine(3, list_norm(a.arg(4)), 2);
        if (is_atom_of(a, "tflist", 1)) return list_size(a.arg(0));
        if (a.has_functor(sym::eq(), 2) || is_atom_of(a, "tf", 1)) return 0;
        return std::nullopt;
    });
}

LevelMapping LevelMapping::weighted(std::string name, std::map<Predicate, WeightedPredicate> table) {
    return LevelMapping(std::move(name), [table = std::move(table)](const Term& a) -> Level {
        if (a.is_var()) return std::nullopt;
        auto it = table.find(predicate_of(a));
        if (it == table.end()) return std::nullopt;
        std::uint64_t total = it->second.offset;
        for (const auto& w : it->second.terms) {
            if (w.arg >= a.arity()) return std::nullopt;
            const Term& t = a.arg(w.arg);
            Level v;
            switch (w.norm) {
            case TermNorm::ListNorm: v = list_norm(t); break;
            case TermNorm::ListSize: v = list_size(t); break;
            case TermNorm::NodeCount: v = t.is_ground() ? Level(t.size()) : std::nullopt; break;
            }
            if (!v) return std::nullopt;
            total += w.weight * *v;
        }
        return total;
    });
}

std::uint64_t level(const LevelMapping& lm, const Term& atom) {
    if (!atom.is_ground()) throw std::invalid_argument("level of a non-ground atom: " + to_text(atom));
    auto v = lm.try_atom(atom);
    if (!v) throw std::invalid_argument("level mapping " + lm.name() + " is undefined on " + to_text(atom));
    return *v;
}

std::uint64_t term_level(const Term& t) {
    if (!t.is_ground()) throw std::invalid_argument("level of a non-ground term: " + to_text(t));
    return *list_norm(t);
}

BoundedResult check_bounded_query(const std::vector<Term>& query, const LevelMapping& lm) {
    BoundedResult r{true, 0};
    for (const Term& a : query) {
        auto v = lm.try_atom(a);
        if (!v) return BoundedResult{false, 0};
        r.level = std::max(r.level, *v);
    }
    return r;
}

std::string to_string(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

std::string Witness::text() const {
    std::string out;
    if (instance) out = to_text(*instance);
    else if (atom) out = to_text(*atom);
    if (!detail.empty()) out += (out.empty() ? "" : "  % ") + detail;
    return out;
}

nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["subject"] = r.subject;
    j["against"] = r.against;
    j["verdict"] = to_string(r.verdict);
    j["bound"] = r.bound;
    j["body_bound"] = r.body_bound;
    j["instances_checked"] = r.instances_checked;
    j["atoms_checked"] = r.atoms_checked;
    j["witness_count"] = r.witness_count;
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : r.witnesses) {
        nlohmann::json jw;
        if (w.instance) jw["instance"] = to_text(*w.instance);
        if (w.atom) jw["atom"] = to_text(*w.atom);
        if (!w.detail.empty()) jw["detail"] = w.detail;
        ws.push_back(std::move(jw));
    }
    j["witnesses"] = std::move(ws);
    j["note"] = "bounded check: FAIL witnesses are genuine violations; PASS holds only up to bound " +
                std::to_string(r.bound);
    return j;
}

std::string summary(const CheckReport& r) {
    std::string out = r.check + " of " + r.subject + " against " + r.against + " at bound " + std::to_string(r.bound) +
                      ": " + to_string(r.verdict) + " (" + std::to_string(r.instances_checked) + " instances, " +
                      std::to_string(r.atoms_checked) + " atoms checked)\n";
    for (const auto& w : r.witnesses) out += "  witness: " + w.text() + "\n";
    if (r.witness_count > r.witnesses.size())
        out += "  ... " + std::to_string(r.witness_count - r.witnesses.size()) + " more\n";
    if (r.passed()) out += "  (evidence up to the bound, not a proof)\n";
    return out;
}

namespace {

Program pure(const Program& p) { return p.has_commit() ? commit_free_projection(p) : p; }

std::optional<GroundRuleInstance> evaluate(const Term& head, const std::vector<Term>& body, const std::string& label) {
    std::vector<BodyItem> items(body.begin(), body.end());
    return simplify_ground_body(head, items, label);
}

void add_witness(CheckReport& r, const CheckOptions& opts, Witness w) {
    ++r.witness_count;
    r.verdict = Verdict::Fail;
    if (r.witnesses.size() < opts.max_witnesses) r.witnesses.push_back(std::move(w));
}

bool all_specified(const Specification& s, const std::vector<Term>& atoms) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const Term& a) { return s.contains(a); });
}

} // namespace

CheckReport check_correctness(const Program& p, const Specification& s, const Signature& sig, std::size_t bound,
                              const CheckOptions& opts) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    CheckReport r = new_report("correctness", opts.subject, s.name());
    r.bound = r.body_bound = bound;
    const Program q = pure(p);
    HerbrandUniverse u(sig);
    for (const Rule& rule : q.rules()) {
        for_each_bounded_instance(rule, u, bound, bound, [&](const Term& head, const std::vector<Term>& body) {
            ++r.instances_checked;
            auto g = evaluate(head, body, rule.label);
            if (!g) return true;
            if (all_specified(s, g->body) && !s.contains(g->head))
                add_witness(r, opts, Witness{*g, std::nullopt, "rule " + rule.label + ": body specified, head not"});
            return true;
        });
    }
    return r;
}

namespace {

// Tuples over a shared pool of ground terms, built on first use.
class BodyGrounder {
public:
    BodyGrounder(HerbrandUniverse& u, std::size_t bound) : u_(u), bound_(bound) {}

    bool for_each(const std::vector<Variable>& vars, const std::function<bool(const Substitution&)>& fn) {
        if (vars.empty()) return fn(Substitution{});
        if (!pool_) pool_ = u_.up_to(bound_);
        std::vector<std::size_t> idx(vars.size(), 0);
        if (pool_->empty()) return true;
        for (;;) {
            Substitution::Map m;
            for (std::size_t i = 0; i < vars.size(); ++i) m.emplace(vars[i], (*pool_)[idx[i]]);
            if (!fn(Substitution(std::move(m)))) return false;
            std::size_t k = vars.size();
            while (k > 0) {
                --k;
                if (++idx[k] < pool_->size()) break;
                idx[k] = 0;
                if (k == 0) return true;
            }
        }
    }

private:
    HerbrandUniverse& u_;
    std::size_t bound_;
    std::optional<std::vector<Term>> pool_;
};

bool builtin_holds(const Term& a) {
    if (a.has_functor(sym::eq(), 2)) return a.arg(0) == a.arg(1);
    return a.has_functor(sym::true_(), 0);
}

std::vector<GroundRuleInstance> covering(const Program& q, const Specification& s, const Term& atom,
                                         BodyGrounder& grounder, std::size_t limit, std::size_t& instances) {
    std::vector<GroundRuleInstance> out;
    const Predicate pred = predicate_of(atom);
    for (std::size_t idx : q.rules_for(pred)) {
        const Rule& rule = q.rules()[idx];
        auto m = match(rule.head, atom);
        if (!m) continue;
        std::vector<Variable> body_only;
        for (const auto& b : rule.body) {
            std::vector<Variable> vs;
            collect_variables(b, vs);
            for (const auto& v : vs)
                if (!m->binds(v) && std::find(body_only.begin(), body_only.end(), v) == body_only.end())
                    body_only.push_back(v);
        }
        std::vector<Term> partial;
        for (const auto& b : rule.body) partial.push_back(apply(*m, b.atom()));
        const bool more = grounder.for_each(body_only, [&](const Substitution& bs) {
            ++instances;
            std::vector<Term> body;
            for (const Term& a : partial) body.push_back(apply(bs, a));
            auto g = evaluate(atom, body, rule.label);
            if (g && all_specified(s, g->body)) {
                out.push_back(std::move(*g));
                if (out.size() >= limit) return false;
            }
            return true;
        });
        if (!more) return out;
    }
    if (!q.defines(pred) && is_builtin(pred) && builtin_holds(atom))
        out.push_back(GroundRuleInstance{atom, {}, "builtin"});
    return out;
}

} // namespace

CheckReport check_coverage(const Program& p, const Specification& s, const Signature& sig, std::size_t bound,
                           const CheckOptions& opts) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    CheckReport r = new_report("coverage", opts.subject, s.name());
    r.bound = bound;
    r.body_bound = bound + opts.slack;
    const Program q = pure(p);
    HerbrandUniverse u(sig);
    BodyGrounder grounder(u, r.body_bound);
    for (const Term& atom : s.enumerate(u, bound)) {
        ++r.atoms_checked;
        if (covering(q, s, atom, grounder, 1, r.instances_checked).empty())
            add_witness(r, opts, Witness{std::nullopt, atom, "specified atom not covered"});
    }
    return r;
}

std::vector<GroundRuleInstance> covering_instances(const Program& p, const Specification& s, const Term& atom,
                                                   HerbrandUniverse& universe, std::size_t body_bound,
                                                   std::size_t limit) {
    BodyGrounder grounder(universe, body_bound);
    std::size_t instances = 0;
    return covering(pure(p), s, atom, grounder, limit, instances);
}

CheckReport check_recurrent(const Program& p, const LevelMapping& lm, const Signature& sig, std::size_t bound,
                            const CheckOptions& opts) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    CheckReport r = new_report("recurrence", opts.subject, lm.name());
    r.bound = r.body_bound = bound;
    const Program q = pure(p);
    HerbrandUniverse u(sig);
    for (const Rule& rule : q.rules()) {
        for_each_bounded_instance(rule, u, bound, bound, [&](const Term& head, const std::vector<Term>& body) {
            ++r.instances_checked;
            auto h = lm.try_atom(head);
            GroundRuleInstance g{head, body, rule.label};
            if (!h) {
                add_witness(r, opts, Witness{g, std::nullopt, "mapping undefined on head"});
                return true;
            }
            for (const Term& b : body) {
                auto v = lm.try_atom(b);
                if (!v) {
                    add_witness(r, opts, Witness{g, std::nullopt, "mapping undefined on " + to_text(b)});
                    return true;
                }
                if (*h <= *v) {
                    add_witness(r, opts,
                                Witness{g, std::nullopt,
                                        "|" + to_text(head) + "| = " + std::to_string(*h) + " <= |" + to_text(b) +
                                            "| = " + std::to_string(*v)});
                    return true;
                }
            }
            return true;
        });
    }
    return r;
}

bool CssldConditionReport::passed() const {
    return std::all_of(per_program.begin(), per_program.end(), [](const CheckReport& r) { return r.passed(); });
}

CssldConditionReport check_cssld_condition(const std::vector<Program>& programs, const Specification& s,
                                           const Signature& sig, std::size_t bound, const CheckOptions& opts) {
    CssldConditionReport out;
    for (std::size_t i = 0; i < programs.size(); ++i) {
        CheckOptions o = opts;
        o.subject = opts.subject + "[" + std::to_string(i + 1) + "]";
        CheckReport r = check_coverage(programs[i], s, sig, bound, o);
        r.check = "cssld";
        out.per_program.push_back(std::move(r));
    }
    return out;
}

nlohmann::json to_json(const CssldConditionReport& r) {
    nlohmann::json j;
    j["check"] = "cssld";
    j["verdict"] = r.passed() ? "PASS" : "FAIL";
    j["programs"] = nlohmann::json::array();
    for (const auto& p : r.per_program) j["programs"].push_back(to_json(p));
    return j;
}

namespace {

class Fixpoint {
public:
    Fixpoint(const Program& p, const Signature& sig, std::size_t bound) : q_(pure(p)), u_(sig), bound_(bound) {
        eq_defined_ = q_.defines(Predicate{sym::eq(), 2});
    }

    BottomUpResult run(std::size_t cap) {
        BottomUpResult out;
        // The final pass that only confirms the fixpoint is not counted.
        for (std::size_t pass = 0; pass <= cap; ++pass) {
            std::vector<Term> fresh;
            for (const Rule& r : q_.rules()) {
                std::vector<Term> body;
                for (const auto& b : r.body) body.push_back(b.atom());
                join(r, body, 0, Substitution{}, fresh);
            }
            bool changed = false;
            for (auto& a : fresh) {
                if (!out.atoms.insert(a).second) continue;
                seen_.insert(a);
                by_pred_[predicate_of(a)].push_back(a);
                changed = true;
            }
            if (!changed) {
                out.fixpoint = true;
                break;
            }
            if (pass == cap) break;
            ++out.iterations;
        }
        return out;
    }

private:
    void emit(const Rule& r, const Substitution& theta, std::vector<Term>& fresh) {
        const Term head = apply(theta, r.head);
        if (head.is_ground()) {
            if (atom_size(head) <= bound_ && !known(head)) fresh.push_back(head);
            return;
        }
        const Term atoms[] = {head};
        for_each_bounded_grounding(u_, atoms, bound_, [&](const Substitution& s) {
            Term h = apply(s, head);
            if (!known(h)) fresh.push_back(std::move(h));
            return true;
        });
    }

    bool known(const Term& a) const { return seen_.count(a) != 0; }

    void join(const Rule& r, const std::vector<Term>& body, std::size_t i, const Substitution& theta,
              std::vector<Term>& fresh) {
        if (i == body.size()) {
            emit(r, theta, fresh);
            return;
        }
        const Term b = apply(theta, body[i]);
        if (b.has_functor(sym::true_(), 0)) {
            join(r, body, i + 1, theta, fresh);
            return;
        }
        if (b.has_functor(sym::eq(), 2) && !eq_defined_) {
            if (auto m = unify(b.arg(0), b.arg(1))) join(r, body, i + 1, compose(theta, *m), fresh);
            return;
        }
        auto it = by_pred_.find(predicate_of(b));
        if (it == by_pred_.end()) return;
        const std::vector<Term> candidates = it->second;
        for (const Term& a : candidates) {
            if (auto m = match(b, a)) join(r, body, i + 1, compose(theta, *m), fresh);
        }
    }

    Program q_;
    HerbrandUniverse u_;
    std::size_t bound_;
    bool eq_defined_ = false;
    std::map<Predicate, std::vector<Term>> by_pred_;
    std::unordered_set<Term> seen_;
};

} // namespace

BottomUpResult bottom_up_model(const Program& p, const Signature& sig, std::size_t term_bound,
                               std::size_t iteration_cap) {
    if (p.rules().empty()) return BottomUpResult{{}, true, 0};
    Fixpoint f(p, sig, term_bound);
    return f.run(iteration_cap);
}

CheckReport ground_completeness_probe(const Program& p, const Specification& s, const Signature& sig,
                                      std::size_t bound, std::size_t iteration_cap, const CheckOptions& opts) {
    CheckReport r = new_report("completeness-probe", opts.subject, s.name());
    r.bound = bound;
    r.body_bound = bound + opts.slack;
    const BottomUpResult model = bottom_up_model(p, sig, r.body_bound, iteration_cap);
    r.instances_checked = model.atoms.size();
    HerbrandUniverse u(sig);
    for (const Term& a : s.enumerate(u, bound)) {
        ++r.atoms_checked;
        if (!model.contains(a)) add_witness(r, opts, Witness{std::nullopt, a, "specified atom not in the bounded least model"});
    }
    if (!model.fixpoint && r.passed())
        r.witnesses.push_back(Witness{std::nullopt, std::nullopt, "iteration cap reached before the fixpoint"});
    return r;
}

Signature default_signature(const Program& p, const Specification* s, const std::vector<std::string>& extra_constants) {
    Signature sig = p.signature();
    if (s) sig.merge(s->signature());
    for (const auto& c : extra_constants) sig.add(c, 0);
    return sig;
}

} // namespace logicbench
