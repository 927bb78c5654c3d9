#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "logicbench/program.hpp"
#include "logicbench/substitution.hpp"

namespace logicbench {

enum class Selection { Leftmost, Rightmost, LeftmostSelectable };

std::string to_string(Selection s);
/// "leftmost", "rightmost", "leftmost-selectable". Throws std::invalid_argument.
Selection parse_selection(std::string_view text);

struct Budget {
    std::size_t max_depth = 10'000;
    std::size_t max_steps = 1'000'000;
};

/// True iff some mask declared for the atom's predicate has all its '-'
/// positions occupied by unbound variables. A mask without '-' never delays.
bool is_delayed(const std::vector<BlockDeclaration>& blocks, const Term& atom);

/// What a clause-selection rule sees at a node.
struct NodeView {
    std::size_t node_id;
    std::size_t depth;
    const std::vector<BodyItem>& query;
    const Term& selected;
};

/// Chooses, per node, which program (1-based) supplies the children.
struct ClauseSelectionRule {
    std::string name;
    std::function<std::size_t(const NodeView&, std::size_t program_count)> choose;

    static ClauseSelectionRule always(std::size_t index);
    /// Program (depth mod n) + 1: the root uses the first program, its children the second, ...
    static ClauseSelectionRule alternate();
    /// For [P31, P32]: the second program when the selected atom is sat_cl5/5 with a
    /// non-variable first argument, the first program otherwise.
    static ClauseSelectionRule nonvar_driven();
};

enum class NodeKind { Internal, Success, Fail, Flounder, Cutoff };
std::string to_string(NodeKind k);

struct Edge {
    std::size_t child = 0;
    std::string rule;          // rule label, "builtin =/2", "nonvar/1", "true", "<label>.then"/".else"
    Substitution mgu;          // restricted to the variables of the parent query
    std::size_t program = 1;   // 1-based index of the program that supplied the rule
};

struct TreeNode {
    std::size_t id = 0;
    std::optional<std::size_t> parent;
    std::size_t depth = 0;
    std::vector<BodyItem> query;
    std::optional<std::size_t> selected; // index into query; absent for leaves
    std::vector<Edge> children;
    NodeKind kind = NodeKind::Internal;
    std::string cutoff_reason;           // "depth" or "steps" for Cutoff leaves
    std::vector<Term> answer;            // root query instance, Success leaves only
};

struct DerivationTree {
    std::vector<Term> root_query;
    std::vector<TreeNode> nodes;         // nodes[0] is the root; ids index this vector
    std::vector<std::size_t> success_order; // Success leaf ids in discovery order
    bool exhaustive = true;
    bool floundered = false;
    bool budget_hit = false;
    std::size_t program_count = 1;

    std::vector<std::vector<Term>> answers() const;
    std::size_t count(NodeKind k) const;
};

struct Answer {
    std::vector<Term> atoms;             // root query instance
    Substitution substitution;           // restricted to the root query's variables
    std::vector<Term> proofs;            // one '$proof'(Label, Head, Children) per root atom, when tracked
};

struct Outcome {
    std::vector<Answer> answers;
    bool exhaustive = true;  // tree fully explored (no budget cutoff, no early stop)
    bool floundered = false; // some explored branch ended with every atom delayed
    bool budget_hit = false;
    bool stopped_early = false; // max_answers reached
    std::size_t steps = 0;
};

struct SolveOptions {
    Selection selection = Selection::LeftmostSelectable;
    Budget budget;
    /// Stop after this many answers (0 = all).
    std::size_t max_answers = 0;
    /// Thread a proof term through every goal so answers carry their proof trees.
    bool track_proofs = false;
    UnifyOptions unify;
};

/// Depth-first SLD (program rule order). Throws std::invalid_argument on a zero
/// budget or on a query predicate that is neither defined, builtin nor external.
Outcome solve(const Program& p, const std::vector<Term>& query, const SolveOptions& opts = {});

DerivationTree build_tree(const Program& p, const std::vector<Term>& query, Selection strat = Selection::LeftmostSelectable,
                          Budget budget = {});

/// csSLD tree: each node's children come from the single program chosen by `csr`.
/// Throws std::invalid_argument on an empty program list or an out-of-range choice.
DerivationTree cssld_solve(const std::vector<Program>& programs, const ClauseSelectionRule& csr,
                           const std::vector<Term>& query, Selection strat = Selection::LeftmostSelectable,
                           Budget budget = {});

/// Answers-only csSLD run (no tree kept), for bulk use.
Outcome cssld_outcome(const std::vector<Program>& programs, const ClauseSelectionRule& csr,
                      const std::vector<Term>& query, const SolveOptions& opts = {});

/// Checks that `pruned` is a connected subgraph of `full` sharing its root:
/// every pruned node matches a full node with a variant query and the same selected
/// atom, and every pruned edge matches a full edge with the same rule label.
/// Nodes below a Cutoff of `full` are accepted. Returns an explanation on mismatch.
std::optional<std::string> pruned_subtree_mismatch(const DerivationTree& pruned, const DerivationTree& full);

/// Tree document: {"root", "nodes": [{"id","parent","depth","query","selected","kind",
/// "children":[{"child","rule","mgu","program"}], "answer"}], "exhaustive","floundered","budget_hit"}.
nlohmann::json to_json(const DerivationTree& t);
nlohmann::json to_json(const Outcome& o);

/// Conjunction rendered as program text.
std::string query_text(const std::vector<BodyItem>& goals);

/// Budget from LOGICBENCH_BUDGET (step count) when set, else the defaults.
Budget default_budget();

} // namespace logicbench
