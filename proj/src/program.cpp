#include "logicbench/program.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace logicbench {

BodyItem::BodyItem(Commit commit) : commit_(std::make_shared<const Commit>(std::move(commit))) {}

bool operator==(const BodyItem& a, const BodyItem& b) {
    if (a.is_commit() != b.is_commit()) return false;
    if (a.is_commit()) return a.commit() == b.commit();
    return a.atom() == b.atom();
}

bool is_builtin(const Predicate& p) {
    return (p.name == sym::eq() && p.arity == 2) || (p.name == sym::nonvar() && p.arity == 1) ||
           (p.name == sym::true_() && p.arity == 0);
}

bool is_commit_condition(const Term& t) {
    return !t.is_var() && (t.has_functor(sym::nonvar(), 1) || t.has_functor(sym::eq(), 2) ||
                           t.has_functor(sym::true_(), 0));
}

namespace {

std::vector<BodyItem> map_items(const std::vector<BodyItem>& items, const auto& f) {
    std::vector<BodyItem> out;
    out.reserve(items.size());
    for (const auto& i : items) out.push_back(f(i));
    return out;
}

} // namespace

BodyItem apply(const Substitution& s, const BodyItem& item) {
    if (item.is_atom()) return apply(s, item.atom());
    const Commit& c = item.commit();
    auto f = [&](const BodyItem& i) { return apply(s, i); };
    return Commit{apply(s, c.condition), map_items(c.then_branch, f), map_items(c.else_branch, f)};
}

BodyItem rename(const BodyItem& item, std::uint32_t version) {
    if (item.is_atom()) return rename(item.atom(), version);
    const Commit& c = item.commit();
    auto f = [&](const BodyItem& i) { return rename(i, version); };
    return Commit{rename(c.condition, version), map_items(c.then_branch, f), map_items(c.else_branch, f)};
}

void collect_variables(const BodyItem& item, std::vector<Variable>& out) {
    if (item.is_atom()) {
        collect_variables(item.atom(), out);
        return;
    }
    const Commit& c = item.commit();
    collect_variables(c.condition, out);
    for (const auto& i : c.then_branch) collect_variables(i, out);
    for (const auto& i : c.else_branch) collect_variables(i, out);
}

namespace {

std::string conj_text(const std::vector<BodyItem>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += to_text(items[i]);
    }
    return out;
}

} // namespace

std::string to_text(const BodyItem& item) {
    if (item.is_atom()) return to_text(item.atom());
    const Commit& c = item.commit();
    return "( " + to_text(c.condition) + " -> " + conj_text(c.then_branch) + " ; " + conj_text(c.else_branch) + " )";
}

bool Rule::has_commit() const {
    return std::any_of(body.begin(), body.end(), [](const BodyItem& i) { return i.is_commit(); });
}

std::vector<Variable> Rule::variables() const {
    std::vector<Variable> out;
    collect_variables(head, out);
    for (const auto& i : body) collect_variables(i, out);
    return out;
}

std::string to_text(const Rule& r) {
    std::string out = to_text(r.head);
    if (!r.body.empty()) out += " :- " + conj_text(r.body);
    return out + ".";
}

std::string to_text(const BlockDeclaration& b) {
    std::string out = ":- block ";
    for (std::size_t m = 0; m < b.masks.size(); ++m) {
        if (m) out += ", ";
        out += quote_name(b.predicate.name.name()) + "(";
        for (std::size_t i = 0; i < b.masks[m].size(); ++i) {
            if (i) out += ", ";
            out += b.masks[m][i] == BlockArg::Unbound ? "-" : "?";
        }
        out += ")";
    }
    return out + ".";
}

Program::Program(std::vector<Rule> rules, std::vector<BlockDeclaration> blocks, std::vector<Predicate> externals)
    : rules_(std::move(rules)), blocks_(std::move(blocks)), externals_(std::move(externals)) {
    std::map<Predicate, std::size_t> counts;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        Rule& r = rules_[i];
        if (r.head.is_var()) throw std::invalid_argument("rule head is a variable");
        const Predicate p = predicate_of(r.head);
        index_[p].push_back(i);
        const std::size_t k = ++counts[p];
        if (r.label.empty()) r.label = to_string(p) + "#" + std::to_string(k);
    }
    for (const auto& b : blocks_)
        for (const auto& m : b.masks)
            if (m.size() != b.predicate.arity)
                throw std::invalid_argument("block mask length differs from arity of " + to_string(b.predicate));
}

const std::vector<std::size_t>& Program::rules_for(const Predicate& p) const {
    static const std::vector<std::size_t> none;
    auto it = index_.find(p);
    return it == index_.end() ? none : it->second;
}

std::vector<Predicate> Program::defined_predicates() const {
    std::vector<Predicate> out;
    for (const auto& r : rules_) {
        Predicate p = predicate_of(r.head);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

namespace {

void body_atoms(const std::vector<BodyItem>& items, std::vector<Term>& out) {
    for (const auto& i : items) {
        if (i.is_atom()) {
            out.push_back(i.atom());
            continue;
        }
        out.push_back(i.commit().condition);
        body_atoms(i.commit().then_branch, out);
        body_atoms(i.commit().else_branch, out);
    }
}

} // namespace

Signature Program::signature() const {
    Signature sig;
    for (const auto& r : rules_) {
        std::vector<Term> atoms{r.head};
        body_atoms(r.body, atoms);
        for (const Term& a : atoms)
            if (!a.is_var())
                for (const Term& arg : a.args()) sig.add_functors_of(arg);
    }
    return sig;
}

std::vector<Predicate> Program::undefined_predicates() const {
    std::vector<Predicate> out;
    for (const auto& r : rules_) {
        std::vector<Term> atoms;
        body_atoms(r.body, atoms);
        for (const Term& a : atoms) {
            if (a.is_var()) continue;
            Predicate p = predicate_of(a);
            if (defines(p) || is_builtin(p)) continue;
            if (std::find(externals_.begin(), externals_.end(), p) != externals_.end()) continue;
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    }
    return out;
}

std::vector<Predicate> Program::reachable_from(const std::vector<Predicate>& roots) const {
    std::vector<Predicate> seen;
    std::vector<Predicate> work = roots;
    while (!work.empty()) {
        Predicate p = work.back();
        work.pop_back();
        if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
        seen.push_back(p);
        for (std::size_t i : rules_for(p)) {
            std::vector<Term> atoms;
            body_atoms(rules_[i].body, atoms);
            for (const Term& a : atoms)
                if (!a.is_var()) work.push_back(predicate_of(a));
        }
    }
    return seen;
}

bool Program::has_commit() const {
    return std::any_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.has_commit(); });
}

const Rule* Program::find(std::string_view label) const {
    for (const auto& r : rules_)
        if (r.label == label) return &r;
    return nullptr;
}

Program Program::without(std::string_view label) const {
    std::vector<Rule> kept;
    bool removed = false;
    for (const auto& r : rules_) {
        if (r.label == label) {
            removed = true;
            continue;
        }
        kept.push_back(r);
    }
    if (!removed) throw std::invalid_argument("no rule labelled " + std::string(label));
    return Program(std::move(kept), blocks_, externals_);
}

Program Program::with_rule(Rule r) const {
    auto rules = rules_;
    if (r.label.empty()) {
        const Predicate p = predicate_of(r.head);
        r.label = to_string(p) + "#" + std::to_string(rules_for(p).size() + 1);
    }
    rules.push_back(std::move(r));
    return Program(std::move(rules), blocks_, externals_);
}

Program Program::with_blocks(std::vector<BlockDeclaration> blocks) const {
    return Program(rules_, std::move(blocks), externals_);
}

Program Program::replacing(std::string_view label, Rule r) const {
    auto rules = rules_;
    bool found = false;
    for (auto& old : rules) {
        if (old.label != label) continue;
        r.label = old.label;
        old = r;
        found = true;
    }
    if (!found) throw std::invalid_argument("no rule labelled " + std::string(label));
    return Program(std::move(rules), blocks_, externals_);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ProgramReader {
public:
    explicit ProgramReader(std::string_view text) : r_(tokenize(text)) {}

    ParsedProgram read() {
        while (!r_.at_end()) {
            r_.reset_anonymous();
            if (r_.at_punct(":-")) {
                r_.next();
                directive();
            } else {
                clause();
            }
        }
        ParsedProgram out{Program(std::move(rules_), std::move(blocks_), std::move(externals_)), {}};
        for (const auto& p : out.program.undefined_predicates())
            out.warnings.push_back("predicate " + to_string(p) + " is used but not defined");
        return out;
    }

private:
    void note_predicate(const Term& atom, SourcePos pos) {
        if (atom.is_var()) throw ParseError("variable used as a goal", pos);
        note_arity(atom.functor(), atom.arity(), pos);
    }

    void note_arity(Symbol name, std::size_t arity, SourcePos pos) {
        auto [it, inserted] = arities_.emplace(name, arity);
        if (!inserted && it->second != arity)
            throw ParseError("predicate " + name.name() + " used with arity " + std::to_string(arity) + " and " +
                                 std::to_string(it->second),
                             pos);
    }

    void note_items(const std::vector<BodyItem>& items, SourcePos pos) {
        for (const auto& i : items) {
            if (i.is_atom()) {
                note_predicate(i.atom(), pos);
                continue;
            }
            note_items(i.commit().then_branch, pos);
            note_items(i.commit().else_branch, pos);
        }
    }

    void clause() {
        const SourcePos pos = r_.peek().pos;
        Term head = r_.read_term();
        if (head.is_var()) throw ParseError("rule head must be an atom", pos);
        note_predicate(head, pos);
        std::vector<BodyItem> body;
        if (r_.at_punct(":-")) {
            r_.next();
            body = conjunction();
        }
        r_.expect(".");
        note_items(body, pos);
        rules_.push_back(Rule{std::move(head), std::move(body), "", pos});
    }

    std::vector<BodyItem> conjunction() {
        std::vector<BodyItem> items;
        body_item(items);
        while (r_.at_punct(",")) {
            r_.next();
            body_item(items);
        }
        return items;
    }

    void body_item(std::vector<BodyItem>& out) {
        if (!r_.at_punct("(")) {
            const SourcePos pos = r_.peek().pos;
            Term t = r_.read_term();
            if (t.is_var()) throw ParseError("variable used as a goal", pos);
            out.push_back(std::move(t));
            return;
        }
        const SourcePos pos = r_.peek().pos;
        r_.next();
        std::vector<BodyItem> first = conjunction();
        if (r_.at_punct(")")) {
            r_.next();
            out.insert(out.end(), first.begin(), first.end());
            return;
        }
        r_.expect("->");
        if (first.size() != 1 || !first[0].is_atom() || !is_commit_condition(first[0].atom()))
            throw ParseError("commit condition must be nonvar/1, =/2 or true", pos);
        std::vector<BodyItem> then_branch = conjunction();
        r_.expect(";");
        std::vector<BodyItem> else_branch = conjunction();
        r_.expect(")");
        out.push_back(Commit{first[0].atom(), std::move(then_branch), std::move(else_branch)});
    }

    void directive() {
        const Token kw = r_.next();
        if (kw.kind != TokenKind::Name) throw ParseError("expected a directive name", kw.pos);
        if (kw.text == "block") {
            do {
                if (r_.at_punct(",")) r_.next();
                block_spec();
            } while (r_.at_punct(","));
        } else if (kw.text == "external") {
            do {
                if (r_.at_punct(",")) r_.next();
                Token name = r_.next();
                if (name.kind != TokenKind::Name) throw ParseError("expected a predicate name", name.pos);
                r_.expect("/");
                Token ar = r_.next();
                if (ar.kind != TokenKind::Name || ar.text.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError("expected an arity", ar.pos);
                externals_.push_back(Predicate{Symbol(name.text), std::stoul(ar.text)});
            } while (r_.at_punct(","));
        } else {
            throw ParseError("unknown directive '" + kw.text + "'", kw.pos);
        }
        r_.expect(".");
    }

    void block_spec() {
        Token name = r_.next();
        if (name.kind != TokenKind::Name) throw ParseError("expected a predicate name in block declaration", name.pos);
        r_.expect("(");
        std::vector<BlockArg> mask;
        for (;;) {
            if (r_.at_punct("-")) mask.push_back(BlockArg::Unbound);
            else if (r_.at_punct("?")) mask.push_back(BlockArg::Any);
            else r_.fail("expected '-' or '?' in block mask");
            r_.next();
            if (r_.at_punct(")")) break;
            r_.expect(",");
        }
        r_.next();
        Predicate p{Symbol(name.text), mask.size()};
        note_arity(p.name, p.arity, name.pos);
        for (auto& b : blocks_)
            if (b.predicate == p) {
                b.masks.push_back(std::move(mask));
                return;
            }
        blocks_.push_back(BlockDeclaration{p, {std::move(mask)}});
    }

    TokenReader r_;
    std::vector<Rule> rules_;
    std::vector<BlockDeclaration> blocks_;
    std::vector<Predicate> externals_;
    std::map<Symbol, std::size_t> arities_;
};

} // namespace

ParsedProgram parse_program_with_warnings(std::string_view text) { return ProgramReader(text).read(); }

Program parse_program(std::string_view text) { return parse_program_with_warnings(text).program; }

std::string to_text(const Program& p) {
    std::string out;
    for (const auto& b : p.blocks()) out += to_text(b) + "\n";
    if (!p.externals().empty()) {
        out += ":- external ";
        for (std::size_t i = 0; i < p.externals().size(); ++i) {
            if (i) out += ", ";
            out += quote_name(p.externals()[i].name.name()) + "/" + std::to_string(p.externals()[i].arity);
        }
        out += ".\n";
    }
    for (const auto& r : p.rules()) out += to_text(r) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Projection and grounding

namespace {

struct Alternative {
    std::vector<BodyItem> items;
    std::string suffix;
};

std::vector<Alternative> expand(const std::vector<BodyItem>& items) {
    std::vector<Alternative> acc{{{}, ""}};
    for (const auto& item : items) {
        if (item.is_atom()) {
            if (item.atom().has_functor(sym::true_(), 0)) continue;
            for (auto& a : acc) a.items.push_back(item);
            continue;
        }
        const Commit& c = item.commit();
        std::vector<BodyItem> then_items;
        if (c.condition.has_functor(sym::eq(), 2)) then_items.push_back(c.condition);
        then_items.insert(then_items.end(), c.then_branch.begin(), c.then_branch.end());
        auto thens = expand(then_items);
        auto elses = expand(c.else_branch);
        std::vector<Alternative> next;
        for (const auto& a : acc) {
            for (const auto& t : thens) {
                Alternative n = a;
                n.items.insert(n.items.end(), t.items.begin(), t.items.end());
                n.suffix += ".then" + t.suffix;
                next.push_back(std::move(n));
            }
            for (const auto& e : elses) {
                Alternative n = a;
                n.items.insert(n.items.end(), e.items.begin(), e.items.end());
                n.suffix += ".else" + e.suffix;
                next.push_back(std::move(n));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

} // namespace

Program commit_free_projection(const Program& p) {
    std::vector<Rule> out;
    for (const auto& r : p.rules()) {
        if (!r.has_commit()) {
            Rule copy = r;
            std::erase_if(copy.body, [](const BodyItem& i) {
                return i.is_atom() && (i.atom().has_functor(sym::true_(), 0) || i.atom().has_functor(sym::nonvar(), 1));
            });
            out.push_back(std::move(copy));
            continue;
        }
        for (auto& alt : expand(r.body)) {
            std::erase_if(alt.items, [](const BodyItem& i) { return i.atom().has_functor(sym::nonvar(), 1); });
            out.push_back(Rule{r.head, std::move(alt.items), r.label + alt.suffix, r.pos});
        }
    }
    return Program(std::move(out), {}, p.externals());
}

std::string to_text(const GroundRuleInstance& g) {
    std::string out = to_text(g.head);
    if (!g.body.empty()) out += " :- " + to_text(std::span<const Term>(g.body));
    return out + ".";
}

std::optional<GroundRuleInstance> simplify_ground_body(const Term& head, const std::vector<BodyItem>& body,
                                                       std::string label) {
    GroundRuleInstance g{head, {}, std::move(label)};
    for (const auto& item : body) {
        if (item.is_commit()) throw std::invalid_argument("ground instances are defined for commit-free rules only");
        const Term& a = item.atom();
        if (!a.is_ground()) throw std::invalid_argument("non-ground body atom " + to_text(a));
        if (a.has_functor(sym::true_(), 0)) continue;
        if (a.has_functor(sym::nonvar(), 1))
            throw std::invalid_argument("nonvar/1 has no ground semantics; project the program first");
        if (a.has_functor(sym::eq(), 2)) {
            if (!(a.arg(0) == a.arg(1))) return std::nullopt;
            continue;
        }
        g.body.push_back(a);
    }
    return g;
}

std::vector<GroundRuleInstance> ground_instances(const Rule& r, const Signature& sig, std::size_t size_bound) {
    if (r.has_commit()) throw std::invalid_argument("ground_instances: rule " + r.label + " contains a commit");
    if (size_bound == 0) throw std::invalid_argument("size bound must be positive");
    HerbrandUniverse universe(sig);
    const auto vars = r.variables();
    std::vector<GroundRuleInstance> out;
    std::set<GroundRuleInstance> seen;
    universe.for_each_tuple(vars.size(), size_bound, [&](std::span<const Term> tuple) {
        Substitution::Map m;
        for (std::size_t i = 0; i < vars.size(); ++i) m.emplace(vars[i], tuple[i]);
        const Substitution s(std::move(m));
        std::vector<BodyItem> body;
        for (const auto& b : r.body) body.push_back(apply(s, b));
        if (auto g = simplify_ground_body(apply(s, r.head), body, r.label))
            if (seen.insert(*g).second) out.push_back(std::move(*g));
        return true;
    });
    return out;
}

bool for_each_bounded_instance(const Rule& r, HerbrandUniverse& universe, std::size_t head_bound,
                               std::size_t body_var_bound,
                               const std::function<bool(const Term& head, const std::vector<Term>& body)>& fn) {
    if (r.has_commit()) throw std::invalid_argument("bounded instances: rule " + r.label + " contains a commit");
    std::vector<Variable> head_vars;
    collect_variables(r.head, head_vars);
    std::vector<Variable> body_only;
    for (const auto& b : r.body) {
        std::vector<Variable> vs;
        collect_variables(b, vs);
        for (const auto& v : vs)
            if (std::find(head_vars.begin(), head_vars.end(), v) == head_vars.end() &&
                std::find(body_only.begin(), body_only.end(), v) == body_only.end())
                body_only.push_back(v);
    }
    const Term heads[] = {r.head};
    return for_each_bounded_grounding(universe, heads, head_bound, [&](const Substitution& hs) {
        const Term head = apply(hs, r.head);
        std::vector<Term> partial;
        for (const auto& b : r.body) partial.push_back(apply(hs, b.atom()));
        if (body_only.empty()) return fn(head, partial);
        return universe.for_each_tuple(body_only.size(), body_var_bound, [&](std::span<const Term> tuple) {
            Substitution::Map m;
            for (std::size_t i = 0; i < body_only.size(); ++i) m.emplace(body_only[i], tuple[i]);
            const Substitution bs(std::move(m));
            std::vector<Term> body;
            for (const Term& a : partial) body.push_back(apply(bs, a));
            return fn(head, body);
        });
    });
}

} // namespace logicbench
