#include "logicbench/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <unordered_map>
#include <stdexcept>

namespace logicbench {

std::string to_string(Selection s) {
    switch (s) {
    case Selection::Leftmost: return "leftmost";
    case Selection::Rightmost: return "rightmost";
    case Selection::LeftmostSelectable: return "leftmost-selectable";
    }
    return "?";
}

Selection parse_selection(std::string_view text) {
    if (text == "leftmost") return Selection::Leftmost;
    if (text == "rightmost") return Selection::Rightmost;
    if (text == "leftmost-selectable") return Selection::LeftmostSelectable;
    throw std::invalid_argument("unknown selection rule '" + std::string(text) + "'");
}

std::string to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Internal: return "internal";
    case NodeKind::Success: return "success";
    case NodeKind::Fail: return "fail";
    case NodeKind::Flounder: return "flounder";
    case NodeKind::Cutoff: return "cutoff";
    }
    return "?";
}

bool is_delayed(const std::vector<BlockDeclaration>& blocks, const Term& atom) {
    if (atom.is_var()) return false;
    const Predicate p = predicate_of(atom);
    for (const auto& b : blocks) {
        if (!(b.predicate == p)) continue;
        for (const auto& mask : b.masks) {
            bool any_minus = false, all_unbound = true;
            for (std::size_t i = 0; i < mask.size(); ++i) {
                if (mask[i] != BlockArg::Unbound) continue;
                any_minus = true;
                if (!atom.arg(i).is_var()) all_unbound = false;
            }
            if (any_minus && all_unbound) return true;
        }
    }
    return false;
}

ClauseSelectionRule ClauseSelectionRule::always(std::size_t index) {
    return {"always(" + std::to_string(index) + ")", [index](const NodeView&, std::size_t) { return index; }};
}

ClauseSelectionRule ClauseSelectionRule::alternate() {
    return {"alternate", [](const NodeView& v, std::size_t n) { return v.depth % n + 1; }};
}

ClauseSelectionRule ClauseSelectionRule::nonvar_driven() {
    return {"nonvar-driven", [](const NodeView& v, std::size_t n) -> std::size_t {
                if (n < 2) return 1;
                const Term& a = v.selected;
                if (a.has_functor(Symbol("sat_cl5"), 5) && !a.arg(0).is_var()) return 2;
                return 1;
            }};
}

std::vector<std::vector<Term>> DerivationTree::answers() const {
    std::vector<std::vector<Term>> out;
    for (std::size_t id : success_order) out.push_back(nodes[id].answer);
    return out;
}

std::size_t DerivationTree::count(NodeKind k) const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [k](const TreeNode& n) { return n.kind == k; }));
}

std::string query_text(const std::vector<BodyItem>& goals) {
    if (goals.empty()) return "[]";
    std::string out;
    for (std::size_t i = 0; i < goals.size(); ++i) {
        if (i) out += ", ";
        out += to_text(goals[i]);
    }
    return out;
}

Budget default_budget() {
    Budget b;
    if (const char* env = std::getenv("LOGICBENCH_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) b.max_steps = static_cast<std::size_t>(v);
    }
    return b;
}

namespace {

const Symbol& proof_functor() {
    static const Symbol s("$proof");
    return s;
}

struct Goal {
    BodyItem item;
    Term proof;                       // proof variable when tracking, else unused
    const std::string* origin = nullptr; // label of the rule the goal came from
};

// Bindings along a branch, newest first; the root query is only instantiated at leaves.
struct Trail {
    Substitution mgu;
    std::shared_ptr<const Trail> parent;
};

struct State {
    std::vector<Goal> goals;
    std::shared_ptr<const Trail> trail;
    std::size_t depth = 0;
    std::size_t id = 0;
};

// Each variable is bound at most once along a branch, so the trail is a triangular
// substitution: dereference through all of it at once.
class Resolver {
public:
    explicit Resolver(const std::shared_ptr<const Trail>& trail) {
        for (const Trail* cur = trail.get(); cur; cur = cur->parent.get())
            for (const auto& [v, t] : cur->mgu.bindings()) bound_.emplace(v, t);
    }

    Term operator()(const Term& t) {
        if (t.is_ground()) return t;
        if (t.is_var()) {
            auto it = bound_.find(t.var());
            if (it == bound_.end()) return t;
            if (auto m = done_.find(t.var()); m != done_.end()) return m->second;
            Term r = (*this)(it->second);
            done_.emplace(t.var(), r);
            return r;
        }
        std::vector<Term> args;
        args.reserve(t.arity());
        bool changed = false;
        for (const Term& a : t.args()) {
            args.push_back((*this)(a));
            changed = changed || !(args.back().identity() == a.identity());
        }
        return changed ? Term::compound(t.functor(), std::move(args)) : t;
    }

private:
    std::unordered_map<Variable, Term, VariableHash> bound_, done_;
};

Term resolve(const Term& t, const std::shared_ptr<const Trail>& trail) { return Resolver(trail)(t); }

std::vector<BodyItem> items_of(const std::vector<Goal>& goals) {
    std::vector<BodyItem> out;
    out.reserve(goals.size());
    for (const auto& g : goals) out.push_back(g.item);
    return out;
}

Substitution restrict_to_query(const Substitution& s, const std::vector<Goal>& goals) {
    std::vector<Variable> vars;
    for (const auto& g : goals) collect_variables(g.item, vars);
    return s.restrict_to(vars);
}

class Explorer {
public:
    Explorer(std::vector<const Program*> programs, const ClauseSelectionRule* csr, const SolveOptions& opts,
             bool record)
        : programs_(std::move(programs)), csr_(csr), opts_(opts), record_(record) {
        if (programs_.empty()) throw std::invalid_argument("at least one program is required");
        if (opts_.budget.max_depth == 0 || opts_.budget.max_steps == 0)
            throw std::invalid_argument("budget must be positive");
        for (const Program* p : programs_) {
            eq_defined_.push_back(p->defines(Predicate{sym::eq(), 2}));
            for (const auto& b : p->blocks()) blocks_.push_back(b);
        }
    }

    void check_query(const std::vector<Term>& query) const {
        for (const Term& a : query) {
            if (a.is_var()) throw std::invalid_argument("query atom is a variable");
            const Predicate p = predicate_of(a);
            if (is_builtin(p)) continue;
            bool known = false;
            for (const Program* prog : programs_) {
                if (prog->defines(p) ||
                    std::find(prog->externals().begin(), prog->externals().end(), p) != prog->externals().end())
                    known = true;
            }
            if (!known) throw std::invalid_argument("unknown predicate " + to_string(p) + " in query");
        }
    }

    void run(const std::vector<Term>& query) {
        check_query(query);
        tree_.root_query = query;
        tree_.program_count = programs_.size();
        root_ = Term::compound("$q", query);

        State root;
        std::vector<Term> root_proofs;
        for (std::size_t i = 0; i < query.size(); ++i) {
            Goal g{query[i], {}, nullptr};
            if (opts_.track_proofs) {
                g.proof = Term::variable("$R" + std::to_string(i), 0);
                root_proofs.push_back(g.proof);
            }
            root.goals.push_back(std::move(g));
        }
        proofs_ = Term::compound("$p", root_proofs);
        root.id = new_node(std::nullopt, root);

        std::vector<State> stack;
        stack.push_back(std::move(root));
        while (!stack.empty()) {
            if (outcome_.steps >= opts_.budget.max_steps) {
                outcome_.budget_hit = true;
                for (const auto& s : stack) mark_cutoff(s.id, "steps");
                break;
            }
            State s = std::move(stack.back());
            stack.pop_back();
            std::vector<State> children = expand(s);
            for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
            if (stop_) {
                for (const auto& st : stack) mark_cutoff(st.id, "stopped");
                break;
            }
        }
        outcome_.exhaustive = !outcome_.budget_hit && !outcome_.stopped_early;
        tree_.exhaustive = outcome_.exhaustive;
        tree_.floundered = outcome_.floundered;
        tree_.budget_hit = outcome_.budget_hit;
    }

    Outcome take_outcome() { return std::move(outcome_); }
    DerivationTree take_tree() { return std::move(tree_); }

private:
    std::size_t new_node(std::optional<std::size_t> parent, const State& s) {
        const std::size_t id = next_id_++;
        if (record_) {
            TreeNode n;
            n.id = id;
            n.parent = parent;
            n.depth = s.depth;
            n.query = items_of(s.goals);
            tree_.nodes.push_back(std::move(n));
        }
        return id;
    }

    void mark_cutoff(std::size_t id, const char* reason) {
        if (!record_) return;
        tree_.nodes[id].kind = NodeKind::Cutoff;
        tree_.nodes[id].cutoff_reason = reason;
    }

    void set_kind(std::size_t id, NodeKind k) {
        if (record_) tree_.nodes[id].kind = k;
    }

    std::optional<std::size_t> select(const State& s) const {
        const auto& g = s.goals;
        switch (opts_.selection) {
        case Selection::Leftmost: return 0;
        case Selection::Rightmost: return g.size() - 1;
        case Selection::LeftmostSelectable:
            for (std::size_t i = 0; i < g.size(); ++i)
                if (g[i].item.is_commit() || !is_delayed(blocks_, g[i].item.atom())) return i;
            return std::nullopt;
        }
        return std::nullopt;
    }

    // Child state: goals[0..k) ++ inserted ++ goals(k..], all under `s`.
    State make_child(const State& parent, std::size_t k, std::vector<Goal> inserted, const Substitution& s) const {
        State c;
        c.depth = parent.depth + 1;
        c.goals.reserve(parent.goals.size() - 1 + inserted.size());
        auto push = [&](const Goal& g) {
            if (s.empty()) c.goals.push_back(g);
            else c.goals.push_back(Goal{apply(s, g.item), opts_.track_proofs ? apply(s, g.proof) : g.proof, g.origin});
        };
        for (std::size_t i = 0; i < k; ++i) push(parent.goals[i]);
        for (const auto& g : inserted) push(g);
        for (std::size_t i = k + 1; i < parent.goals.size(); ++i) push(parent.goals[i]);
        c.trail = s.empty() ? parent.trail : std::make_shared<const Trail>(Trail{s, parent.trail});
        return c;
    }

    std::vector<Goal> body_goals(const std::vector<BodyItem>& items, std::uint32_t version, const std::string* origin,
                                 std::vector<Term>& proof_vars) {
        std::vector<Goal> out;
        out.reserve(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) {
            Goal g{items[i], {}, origin};
            if (opts_.track_proofs) {
                g.proof = Term::variable("$P" + std::to_string(i), version);
                proof_vars.push_back(g.proof);
            }
            out.push_back(std::move(g));
        }
        return out;
    }

    void add_child(const State& parent, std::vector<State>& out, State child, const std::string& rule,
                   const Substitution& mgu, std::size_t program) {
        child.id = new_node(parent.id, child);
        if (record_) {
            Edge e{child.id, rule, restrict_to_query(mgu, parent.goals), program};
            tree_.nodes[parent.id].children.push_back(std::move(e));
        }
        out.push_back(std::move(child));
    }

    Term proof_term(const std::string& label, const Term& head, const std::vector<Term>& children) const {
        return Term::compound(proof_functor(), {Term::constant(label), head, Term::list(children)});
    }

    std::vector<State> expand(const State& s) {
        std::vector<State> out;
        if (s.goals.empty()) {
            set_kind(s.id, NodeKind::Success);
            const Term answers = resolve(root_, s.trail);
            if (record_) {
                tree_.nodes[s.id].answer = std::vector<Term>(answers.args().begin(), answers.args().end());
                tree_.success_order.push_back(s.id);
            }
            Answer a;
            a.atoms.assign(answers.args().begin(), answers.args().end());
            if (auto m = match(root_, answers)) a.substitution = std::move(*m);
            if (opts_.track_proofs) {
                const Term proofs = resolve(proofs_, s.trail);
                a.proofs.assign(proofs.args().begin(), proofs.args().end());
            }
            outcome_.answers.push_back(std::move(a));
            if (opts_.max_answers != 0 && outcome_.answers.size() >= opts_.max_answers) {
                outcome_.stopped_early = true;
                stop_ = true;
            }
            return out;
        }
        if (s.depth >= opts_.budget.max_depth) {
            outcome_.budget_hit = true;
            mark_cutoff(s.id, "depth");
            return out;
        }
        const auto sel = select(s);
        if (!sel) {
            outcome_.floundered = true;
            set_kind(s.id, NodeKind::Flounder);
            return out;
        }
        ++outcome_.steps;
        const std::size_t k = *sel;
        if (record_) tree_.nodes[s.id].selected = k;
        const Goal& g = s.goals[k];

        const Term& focus = g.item.is_atom() ? g.item.atom() : g.item.commit().condition;
        std::size_t prog = 1;
        if (csr_ != nullptr && programs_.size() > 1) {
            std::vector<BodyItem> view_items = items_of(s.goals);
            prog = csr_->choose(NodeView{s.id, s.depth, view_items, focus}, programs_.size());
            if (prog < 1 || prog > programs_.size())
                throw std::invalid_argument("clause selection rule '" + csr_->name + "' chose program " +
                                            std::to_string(prog) + " of " + std::to_string(programs_.size()));
        }
        const Program& program = *programs_[prog - 1];

        if (g.item.is_commit()) {
            expand_commit(s, k, g, prog, out);
        } else {
            expand_atom(s, k, g, program, prog, out);
        }
        if (out.empty()) set_kind(s.id, NodeKind::Fail);
        return out;
    }

    void expand_commit(const State& s, std::size_t k, const Goal& g, std::size_t prog, std::vector<State>& out) {
        const Commit& c = g.item.commit();
        std::optional<Substitution> cond;
        if (c.condition.has_functor(sym::true_(), 0)) cond = Substitution{};
        else if (c.condition.has_functor(sym::nonvar(), 1)) {
            if (!c.condition.arg(0).is_var()) cond = Substitution{};
        } else {
            cond = unify(c.condition.arg(0), c.condition.arg(1), opts_.unify);
        }
        const bool then = cond.has_value();
        Substitution mgu = then ? *cond : Substitution{};
        const auto& branch = then ? c.then_branch : c.else_branch;
        std::vector<Term> proof_vars;
        const std::uint32_t version = ++version_;
        auto inserted = body_goals(branch, version, g.origin, proof_vars);
        if (opts_.track_proofs)
            mgu.bind(g.proof.var(), Term::compound("$branch", {Term::list(proof_vars)}));
        const std::string label = (g.origin ? *g.origin : std::string("commit")) + (then ? ".then" : ".else");
        add_child(s, out, make_child(s, k, std::move(inserted), mgu), label, mgu, prog);
    }

    void expand_atom(const State& s, std::size_t k, const Goal& g, const Program& program, std::size_t prog,
                     std::vector<State>& out) {
        const Term& atom = g.item.atom();
        if (atom.has_functor(sym::true_(), 0)) {
            Substitution mgu;
            if (opts_.track_proofs) mgu.bind(g.proof.var(), proof_term("true", atom, {}));
            add_child(s, out, make_child(s, k, {}, mgu), "true", mgu, prog);
            return;
        }
        if (atom.has_functor(sym::nonvar(), 1)) {
            if (atom.arg(0).is_var()) return;
            Substitution mgu;
            if (opts_.track_proofs) mgu.bind(g.proof.var(), proof_term("nonvar/1", atom, {}));
            add_child(s, out, make_child(s, k, {}, mgu), "nonvar/1", mgu, prog);
            return;
        }
        if (atom.has_functor(sym::eq(), 2) && !eq_defined_[prog - 1]) {
            auto mgu = unify(atom.arg(0), atom.arg(1), opts_.unify);
            if (!mgu) return;
            if (opts_.track_proofs) mgu->bind(g.proof.var(), proof_term("builtin =/2", apply(*mgu, atom), {}));
            add_child(s, out, make_child(s, k, {}, *mgu), "builtin =/2", *mgu, prog);
            return;
        }
        for (std::size_t idx : program.rules_for(predicate_of(atom))) {
            const Rule& r = program.rules()[idx];
            const std::uint32_t version = ++version_;
            const Term head = rename(r.head, version);
            auto mgu = unify(atom, head, opts_.unify);
            if (!mgu) continue;
            std::vector<BodyItem> body;
            body.reserve(r.body.size());
            for (const auto& b : r.body) body.push_back(rename(b, version));
            std::vector<Term> proof_vars;
            auto inserted = body_goals(body, version, &r.label, proof_vars);
            if (opts_.track_proofs) mgu->bind(g.proof.var(), apply(*mgu, proof_term(r.label, head, proof_vars)));
            add_child(s, out, make_child(s, k, std::move(inserted), *mgu), r.label, *mgu, prog);
        }
    }

    std::vector<const Program*> programs_;
    const ClauseSelectionRule* csr_;
    SolveOptions opts_;
    bool record_;
    std::vector<bool> eq_defined_;
    std::vector<BlockDeclaration> blocks_;
    Term root_;
    Term proofs_;
    std::uint32_t version_ = 0;
    std::size_t next_id_ = 0;
    bool stop_ = false;
    Outcome outcome_;
    DerivationTree tree_;
};

std::vector<const Program*> pointers(const std::vector<Program>& ps) {
    std::vector<const Program*> out;
    for (const auto& p : ps) out.push_back(&p);
    return out;
}

} // namespace

Outcome solve(const Program& p, const std::vector<Term>& query, const SolveOptions& opts) {
    Explorer e({&p}, nullptr, opts, false);
    e.run(query);
    return e.take_outcome();
}

DerivationTree build_tree(const Program& p, const std::vector<Term>& query, Selection strat, Budget budget) {
    SolveOptions opts;
    opts.selection = strat;
    opts.budget = budget;
    Explorer e({&p}, nullptr, opts, true);
    e.run(query);
    return e.take_tree();
}

DerivationTree cssld_solve(const std::vector<Program>& programs, const ClauseSelectionRule& csr,
                           const std::vector<Term>& query, Selection strat, Budget budget) {
    SolveOptions opts;
    opts.selection = strat;
    opts.budget = budget;
    Explorer e(pointers(programs), &csr, opts, true);
    e.run(query);
    return e.take_tree();
}

Outcome cssld_outcome(const std::vector<Program>& programs, const ClauseSelectionRule& csr,
                      const std::vector<Term>& query, const SolveOptions& opts) {
    Explorer e(pointers(programs), &csr, opts, false);
    e.run(query);
    return e.take_outcome();
}

namespace {

Term item_term(const BodyItem& item);

Term conj_term(const std::vector<BodyItem>& items) {
    std::vector<Term> ts;
    for (const auto& i : items) ts.push_back(item_term(i));
    return Term::compound("$q", ts);
}

Term item_term(const BodyItem& item) {
    if (item.is_atom()) return item.atom();
    const Commit& c = item.commit();
    return Term::compound("$commit", {c.condition, conj_term(c.then_branch), conj_term(c.else_branch)});
}

} // namespace

std::optional<std::string> pruned_subtree_mismatch(const DerivationTree& pruned, const DerivationTree& full) {
    if (pruned.nodes.empty() || full.nodes.empty()) return std::string("empty tree");
    std::vector<std::pair<std::size_t, std::size_t>> work{{0, 0}};
    while (!work.empty()) {
        auto [pi, fi] = work.back();
        work.pop_back();
        const TreeNode& pn = pruned.nodes[pi];
        const TreeNode& fn = full.nodes[fi];
        if (fn.kind == NodeKind::Cutoff || pn.kind == NodeKind::Cutoff) continue;
        if (canonical_form(conj_term(pn.query)) != canonical_form(conj_term(fn.query)))
            return "node " + std::to_string(pi) + ": query " + query_text(pn.query) + " has no counterpart";
        if (pn.kind == NodeKind::Success && fn.kind != NodeKind::Success)
            return "node " + std::to_string(pi) + ": success leaf does not match";
        if (pn.kind == NodeKind::Flounder && fn.kind != NodeKind::Flounder)
            return "node " + std::to_string(pi) + ": flounder leaf does not match";
        if (pn.children.empty()) continue;
        if (pn.selected != fn.selected) return "node " + std::to_string(pi) + ": different selected atom";
        std::vector<bool> used(fn.children.size(), false);
        for (const Edge& pe : pn.children) {
            const std::string want = canonical_form(conj_term(pruned.nodes[pe.child].query));
            bool found = false;
            for (std::size_t j = 0; j < fn.children.size() && !found; ++j) {
                const Edge& fe = fn.children[j];
                if (used[j] || fe.rule != pe.rule) continue;
                if (full.nodes[fe.child].kind != NodeKind::Cutoff &&
                    canonical_form(conj_term(full.nodes[fe.child].query)) != want)
                    continue;
                used[j] = true;
                found = true;
                work.emplace_back(pe.child, fe.child);
            }
            if (!found)
                return "node " + std::to_string(pi) + ": edge via " + pe.rule + " is not an edge of the full tree";
        }
    }
    return std::nullopt;
}

namespace {

nlohmann::json subst_json(const Substitution& s) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [v, t] : s.bindings()) j[to_text(Term::variable(v))] = to_text(t);
    return j;
}

nlohmann::json atoms_json(std::span<const Term> atoms) {
    nlohmann::json j = nlohmann::json::array();
    for (const Term& t : atoms) j.push_back(to_text(t));
    return j;
}

} // namespace

nlohmann::json to_json(const DerivationTree& t) {
    nlohmann::json j;
    j["root"] = to_text(std::span<const Term>(t.root_query));
    j["programs"] = t.program_count;
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : t.nodes) {
        nlohmann::json jn;
        jn["id"] = n.id;
        jn["parent"] = n.parent ? nlohmann::json(*n.parent) : nlohmann::json(nullptr);
        jn["depth"] = n.depth;
        jn["query"] = query_text(n.query);
        jn["selected"] = n.selected ? nlohmann::json(*n.selected) : nlohmann::json(nullptr);
        jn["kind"] = to_string(n.kind);
        if (n.kind == NodeKind::Cutoff) jn["cutoff"] = n.cutoff_reason;
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : n.children)
            edges.push_back({{"child", e.child}, {"rule", e.rule}, {"mgu", subst_json(e.mgu)}, {"program", e.program}});
        jn["children"] = std::move(edges);
        if (n.kind == NodeKind::Success) jn["answer"] = atoms_json(n.answer);
        nodes.push_back(std::move(jn));
    }
    j["nodes"] = std::move(nodes);
    j["answers"] = nlohmann::json::array();
    for (std::size_t id : t.success_order) j["answers"].push_back(to_text(std::span<const Term>(t.nodes[id].answer)));
    j["exhaustive"] = t.exhaustive;
    j["floundered"] = t.floundered;
    j["budget_hit"] = t.budget_hit;
    return j;
}

nlohmann::json to_json(const Outcome& o) {
    nlohmann::json j;
    nlohmann::json answers = nlohmann::json::array();
    for (const auto& a : o.answers)
        answers.push_back({{"answer", to_text(std::span<const Term>(a.atoms))}, {"substitution", subst_json(a.substitution)}});
    j["answers"] = std::move(answers);
    j["exhaustive"] = o.exhaustive;
    j["floundered"] = o.floundered;
    j["budget_hit"] = o.budget_hit;
    j["steps"] = o.steps;
    return j;
}

} // namespace logicbench
