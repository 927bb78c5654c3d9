#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logicbench/herbrand.hpp"
#include "logicbench/syntax.hpp"
#include "logicbench/term.hpp"

namespace logicbench {

/// Predicate symbol with arity, e.g. sat_cl5/5.
using Predicate = Functor;

inline Predicate predicate_of(const Term& atom) { return Predicate{atom.functor(), atom.arity()}; }

struct Commit;

/// One conjunct of a rule body: an atom (user predicate or builtin `=`/2,
/// `nonvar`/1, `true`) or an if-then-else commit.
class BodyItem {
public:
    BodyItem(Term atom) : atom_(std::move(atom)) {}  // NOLINT(google-explicit-constructor)
    BodyItem(Commit commit);                         // NOLINT(google-explicit-constructor)

    bool is_atom() const { return commit_ == nullptr; }
    bool is_commit() const { return commit_ != nullptr; }
    const Term& atom() const { return atom_; }
    const Commit& commit() const { return *commit_; }

    friend bool operator==(const BodyItem& a, const BodyItem& b);

private:
    Term atom_;
    std::shared_ptr<const Commit> commit_;
};

/// `( Cond -> Then ; Else )` with a deterministic condition.
struct Commit {
    Term condition; // nonvar(X), X = Y, or true
    std::vector<BodyItem> then_branch;
    std::vector<BodyItem> else_branch;

    friend bool operator==(const Commit&, const Commit&) = default;
};

bool is_builtin(const Predicate& p);
bool is_commit_condition(const Term& t);

BodyItem apply(const Substitution& s, const BodyItem& item);
BodyItem rename(const BodyItem& item, std::uint32_t version);
void collect_variables(const BodyItem& item, std::vector<Variable>& out);
std::string to_text(const BodyItem& item);

struct Rule {
    Term head;
    std::vector<BodyItem> body;
    /// Stable identifier, "pred/arity#k" with k counted within the procedure of
    /// the program the rule was first read into. Kept when rules are copied or removed.
    std::string label;
    SourcePos pos;

    bool has_commit() const;
    std::vector<Variable> variables() const;

    /// Rule equality ignores label and position.
    friend bool operator==(const Rule& a, const Rule& b) { return a.head == b.head && a.body == b.body; }
};

std::string to_text(const Rule& r);

enum class BlockArg { Unbound, Any }; // '-' and '?'

struct BlockDeclaration {
    Predicate predicate;
    std::vector<std::vector<BlockArg>> masks;

    friend bool operator==(const BlockDeclaration&, const BlockDeclaration&) = default;
};

std::string to_text(const BlockDeclaration& b);

/// Definite-clause program with control annotations. Immutable once built.
class Program {
public:
    Program() = default;
    Program(std::vector<Rule> rules, std::vector<BlockDeclaration> blocks = {}, std::vector<Predicate> externals = {});

    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<BlockDeclaration>& blocks() const { return blocks_; }
    const std::vector<Predicate>& externals() const { return externals_; }
    /// Indices into rules(), in program order.
    const std::vector<std::size_t>& rules_for(const Predicate& p) const;
    bool defines(const Predicate& p) const { return !rules_for(p).empty(); }
    std::vector<Predicate> defined_predicates() const;

    /// Function symbols in rule arguments (predicates excluded).
    Signature signature() const;

    /// Body predicates that are neither defined, builtin, nor declared external.
    std::vector<Predicate> undefined_predicates() const;

    /// Static call graph: predicates reachable from `roots` (roots included).
    std::vector<Predicate> reachable_from(const std::vector<Predicate>& roots) const;

    bool has_commit() const;

    /// Copy without the rule carrying `label`. Throws if no such rule.
    Program without(std::string_view label) const;
    /// Copy with an extra rule appended (label assigned if empty).
    Program with_rule(Rule r) const;
    Program with_blocks(std::vector<BlockDeclaration> blocks) const;
    /// Copy with rule `label` replaced by `r` (label kept).
    Program replacing(std::string_view label, Rule r) const;
    /// Rule carrying `label`, if any.
    const Rule* find(std::string_view label) const;

    friend bool operator==(const Program& a, const Program& b) {
        return a.rules_ == b.rules_ && a.blocks_ == b.blocks_;
    }

private:
    std::vector<Rule> rules_;
    std::vector<BlockDeclaration> blocks_;
    std::vector<Predicate> externals_;
    std::map<Predicate, std::vector<std::size_t>> index_;
};

struct ParsedProgram {
    Program program;
    std::vector<std::string> warnings;
};

/// Grammar: `Head :- B1, ..., Bn.`, `Head.`, `( Cond -> Then ; Else )`,
/// `:- block p(m1,...,mk).`, `:- external p/n, ... .`, `%` comments.
/// Throws ParseError (with line/column) on syntax errors and on a predicate
/// name used with two different arities.
ParsedProgram parse_program_with_warnings(std::string_view text);
Program parse_program(std::string_view text);

/// Program text that parses back to an equal program.
std::string to_text(const Program& p);

/// Replaces each commit by its two branches: `H :- Pre, C, Then, Post.` and
/// `H :- Pre, Else, Post.`; `nonvar` conditions and `true` conjuncts are dropped.
/// Labels of split rules get ".then"/".else" suffixes.
Program commit_free_projection(const Program& p);

/// Ground instance with `=`/2 pre-evaluated: equal sides vanish, instances
/// with different sides are not produced. All terms ground.
struct GroundRuleInstance {
    Term head;
    std::vector<Term> body;
    std::string rule_label;

    friend bool operator==(const GroundRuleInstance& a, const GroundRuleInstance& b) {
        return a.head == b.head && a.body == b.body;
    }
    friend auto operator<=>(const GroundRuleInstance& a, const GroundRuleInstance& b) {
        if (auto c = a.head <=> b.head; c != 0) return c;
        return std::lexicographical_compare_three_way(a.body.begin(), a.body.end(), b.body.begin(), b.body.end());
    }
};

std::string to_text(const GroundRuleInstance& g);

/// Drops `true`, evaluates `=`/2 on ground sides. nullopt when some `=` has different sides.
/// Throws std::invalid_argument on commits, `nonvar` or non-ground atoms.
std::optional<GroundRuleInstance> simplify_ground_body(const Term& head, const std::vector<BodyItem>& body,
                                                       std::string label);

/// Every instance of a commit-free rule obtained by substituting each variable
/// with a term of enumerate_herbrand(sig, size_bound); duplicates removed.
/// Throws std::invalid_argument when `r` contains a commit.
std::vector<GroundRuleInstance> ground_instances(const Rule& r, const Signature& sig, std::size_t size_bound);

/// Ground instances used by the bounded checks: head atom_size <= head_bound,
/// body-only variables range over terms of size <= body_var_bound. Raw bodies
/// (no `=` evaluation). Stops early when `fn` returns false; returns false iff stopped.
bool for_each_bounded_instance(const Rule& r, HerbrandUniverse& universe, std::size_t head_bound,
                               std::size_t body_var_bound,
                               const std::function<bool(const Term& head, const std::vector<Term>& body)>& fn);

} // namespace logicbench
