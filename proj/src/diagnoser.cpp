#include "logicbench/diagnoser.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "logicbench/verifier.hpp"

namespace logicbench {

std::string to_string(DiagnosisKind k) {
    switch (k) {
    case DiagnosisKind::IncorrectInstance: return "INCORRECT_INSTANCE";
    case DiagnosisKind::UncoveredAtom: return "UNCOVERED_ATOM";
    case DiagnosisKind::NoDefectFound: return "NO_DEFECT_FOUND";
    }
    return "?";
}

namespace {

Term ground_with(const Term& t, const Term& filler) {
    if (t.is_ground()) return t;
    Substitution s;
    for (const auto& v : variables_of(t)) s.bind(v, filler);
    return apply(s, t);
}

// Proof terms of the direct children, with '$branch' wrappers flattened.
void child_proofs(const Term& list, std::vector<Term>& out) {
    for (const Term& c : list_elements(list)) {
        if (c.has_functor(Symbol("$branch"), 1)) child_proofs(c.arg(0), out);
        else out.push_back(c);
    }
}

std::size_t build(ProofTree& tree, const Term& proof, const Term& filler) {
    if (!proof.has_functor(Symbol("$proof"), 3)) throw std::invalid_argument("not a proof term: " + to_text(proof));
    const std::size_t id = tree.nodes.size();
    tree.nodes.push_back({});
    std::vector<Term> kids;
    child_proofs(proof.arg(2), kids);
    std::vector<std::size_t> child_ids;
    std::vector<BodyItem> body;
    for (const Term& k : kids) {
        body.push_back(ground_with(k.arg(1), filler));
        // Builtins and equations are evaluated in the parent, as in ground instances.
        const std::string label = k.arg(0).functor().name();
        if (label == "true" || label == "nonvar/1" || k.arg(1).has_functor(sym::eq(), 2)) continue;
        child_ids.push_back(build(tree, k, filler));
    }
    std::erase_if(body, [](const BodyItem& b) { return b.atom().has_functor(sym::nonvar(), 1); });
    auto inst = simplify_ground_body(ground_with(proof.arg(1), filler), body, proof.arg(0).functor().name());
    if (!inst) throw std::logic_error("proof contains a false equation");
    tree.nodes[id].instance = std::move(*inst);
    tree.nodes[id].children = std::move(child_ids);
    return id;
}

std::size_t fixed_nodes(const Term& t) {
    if (t.is_var()) return 0;
    std::size_t n = 1;
    for (const Term& a : t.args()) n += fixed_nodes(a);
    return n;
}

std::string membership(const Specification& s, const Term& a) {
    return to_text(a) + (s.contains(a) ? " in " : " not in ") + s.name();
}

Diagnosis no_defect(std::string reason) {
    Diagnosis d;
    d.reason = std::move(reason);
    return d;
}

} // namespace

ProofTree proof_tree_from_term(const Term& proof, const Term& filler) {
    ProofTree t;
    build(t, proof, filler);
    return t;
}

Diagnosis diagnose_incorrectness(const Program& p, const Specification& s_corr, const Term& wrong,
                                 const Signature& sig, std::size_t bound, const DiagnoseOptions& opts) {
    (void)bound;
    if (!wrong.is_ground()) throw std::invalid_argument("the wrong answer must be ground: " + to_text(wrong));
    if (s_corr.contains(wrong)) return no_defect(to_text(wrong) + " is specified; it is not an incorrectness symptom");
    SolveOptions so;
    so.budget = opts.budget;
    so.max_answers = 1;
    so.track_proofs = true;
    Outcome o = solve(p, {wrong}, so);
    if (o.answers.empty()) return no_defect("symptom not reproduced");
    HerbrandUniverse u(sig);
    const ProofTree tree = proof_tree_from_term(o.answers.front().proofs.front(), u.some_constant());

    std::optional<std::size_t> blamed;
    std::function<bool(std::size_t)> visit = [&](std::size_t id) {
        for (std::size_t c : tree.nodes[id].children)
            if (visit(c)) return true;
        const auto& inst = tree.nodes[id].instance;
        if (s_corr.contains(inst.head)) return false;
        for (const Term& b : inst.body)
            if (!s_corr.contains(b)) return false;
        blamed = id;
        return true;
    };
    visit(0);
    if (!blamed) return no_defect("no proof-tree node violates the correctness condition");
    Diagnosis d;
    d.kind = DiagnosisKind::IncorrectInstance;
    d.instance = tree.nodes[*blamed].instance;
    d.reason = "incorrect instance of rule " + d.instance->rule_label;
    d.justification.push_back(membership(s_corr, d.instance->head));
    for (const Term& b : d.instance->body) d.justification.push_back(membership(s_corr, b));
    return d;
}

namespace {

class IncompletenessWalk {
public:
    IncompletenessWalk(const Program& p, const Specification& s, const Signature& sig, std::size_t bound,
                       const DiagnoseOptions& opts)
        : p_(p), s_(s), u_(sig), bound_(bound), opts_(opts) {}

    // True when the ground atom is an answer (found within budget).
    std::optional<bool> computed(const Term& a) {
        SolveOptions so;
        so.budget = opts_.budget;
        so.max_answers = 1;
        Outcome o = solve(p_, {a}, so);
        if (!o.answers.empty()) return true;
        if (o.budget_hit) return std::nullopt;
        return false;
    }

    std::optional<Term> walk(const Term& a, std::size_t depth) {
        if (!visited_.insert(a).second || depth > 64) return std::nullopt;
        auto covers = covering_instances(p_, s_, a, u_, bound_ + opts_.slack, 64);
        if (covers.empty()) return a;
        for (const auto& inst : covers) {
            for (const Term& b : inst.body) {
                auto c = computed(b);
                if (c && !*c) {
                    if (auto found = walk(b, depth + 1)) return found;
                }
            }
        }
        return std::nullopt;
    }

    HerbrandUniverse& universe() { return u_; }

private:
    const Program& p_;
    const Specification& s_;
    HerbrandUniverse u_;
    std::size_t bound_;
    DiagnoseOptions opts_;
    std::set<Term> visited_;
};

} // namespace

Diagnosis diagnose_incompleteness(const Program& p, const Specification& s_compl, const std::vector<Term>& query,
                                  const Signature& sig, std::size_t bound, const DiagnoseOptions& opts) {
    SolveOptions so;
    so.budget = opts.budget;
    Outcome o = solve(p, query, so);
    if (o.budget_hit) return no_defect("tree not finite within budget");

    const Term goal = Term::compound("$q", query);
    std::vector<Term> answers;
    for (const auto& a : o.answers) answers.push_back(Term::compound("$q", a.atoms));

    // Symptom: a specified ground instance of the query that no answer subsumes.
    IncompletenessWalk w(p, s_compl, sig, bound, opts);
    std::size_t fixed = 0;
    for (const Term& a : query) fixed += fixed_nodes(a) - 1;
    std::optional<Term> symptom;
    for_each_bounded_grounding(w.universe(), std::span<const Term>(query), fixed + bound, [&](const Substitution& s) {
        const Term inst = apply(s, goal);
        for (const Term& a : inst.args())
            if (!s_compl.contains(a)) return true;
        for (const Term& ans : answers)
            if (subsumes(ans, inst)) return true;
        symptom = inst;
        return false;
    });
    if (!symptom) return no_defect("program complete for query at this bound");

    for (const Term& a : symptom->args()) {
        auto c = w.computed(a);
        if (c && *c) continue;
        if (auto found = w.walk(a, 0)) {
            Diagnosis d;
            d.kind = DiagnosisKind::UncoveredAtom;
            d.atom = *found;
            d.reason = "specified atom covered by no rule instance (symptom " + to_text(std::span<const Term>(symptom->args())) + ")";
            d.justification.push_back(membership(s_compl, *found));
            d.justification.push_back("no ground instance of a rule for " + to_string(predicate_of(*found)) +
                                      " has head " + to_text(*found) + " and a specified body");
            return d;
        }
    }

    // Fallback: any uncovered atom of a predicate reachable from the query.
    std::vector<Predicate> roots;
    for (const Term& a : query) roots.push_back(predicate_of(a));
    const auto reach = p.reachable_from(roots);
    CheckOptions co;
    co.max_witnesses = static_cast<std::size_t>(-1);
    co.slack = opts.slack;
    CheckReport r = check_coverage(p, s_compl, sig, bound, co);
    for (const auto& wit : r.witnesses) {
        if (!wit.atom || std::find(reach.begin(), reach.end(), predicate_of(*wit.atom)) == reach.end()) continue;
        Diagnosis d;
        d.kind = DiagnosisKind::UncoveredAtom;
        d.atom = *wit.atom;
        d.reason = "uncovered specified atom reachable from the query";
        d.justification.push_back(membership(s_compl, *wit.atom));
        return d;
    }
    return no_defect("symptom found but no uncovered atom within bound " + std::to_string(bound));
}

Diagnosis diagnose_incorrectness(const Program& p, const SpecPair& specs, const Term& wrong, const Signature& sig,
                                 std::size_t bound, const DiagnoseOptions& opts) {
    return diagnose_incorrectness(p, specs.for_correctness, wrong, sig, bound, opts);
}

Diagnosis diagnose_incompleteness(const Program& p, const SpecPair& specs, const std::vector<Term>& query,
                                  const Signature& sig, std::size_t bound, const DiagnoseOptions& opts) {
    return diagnose_incompleteness(p, specs.for_completeness, query, sig, bound, opts);
}

nlohmann::json to_json(const Diagnosis& d) {
    nlohmann::json j;
    j["kind"] = to_string(d.kind);
    if (d.instance) {
        j["instance"] = to_text(*d.instance);
        j["rule"] = d.instance->rule_label;
    }
    if (d.atom) j["atom"] = to_text(*d.atom);
    j["reason"] = d.reason;
    j["justification"] = d.justification;
    return j;
}

std::string summary(const Diagnosis& d) {
    std::string out = to_string(d.kind);
    if (d.instance) out += ": " + to_text(*d.instance);
    if (d.atom) out += ": " + to_text(*d.atom);
    out += "\n  " + d.reason + "\n";
    for (const auto& j : d.justification) out += "  " + j + "\n";
    return out;
}

} // namespace logicbench
