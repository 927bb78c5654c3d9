#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "logicbench/engine.hpp"
#include "logicbench/program.hpp"
#include "logicbench/spec.hpp"

namespace logicbench {

/// Ground proof tree of a successful derivation. Node 0 is the root; each node
/// holds the ground rule instance used and the nodes proving its body atoms.
struct ProofTree {
    struct Node {
        GroundRuleInstance instance;
        std::vector<std::size_t> children;
    };
    std::vector<Node> nodes;

    const Term& root() const { return nodes.front().instance.head; }
};

/// Builds the tree from a '$proof'(Label, Head, Children) term produced with
/// SolveOptions::track_proofs. Remaining variables are replaced by `filler`;
/// `=` and `true` body atoms are evaluated away as in ground instances.
ProofTree proof_tree_from_term(const Term& proof, const Term& filler);

enum class DiagnosisKind { IncorrectInstance, UncoveredAtom, NoDefectFound };
std::string to_string(DiagnosisKind k);

struct Diagnosis {
    DiagnosisKind kind = DiagnosisKind::NoDefectFound;
    std::optional<GroundRuleInstance> instance;
    std::optional<Term> atom;
    std::string reason;
    /// Membership facts backing the verdict, e.g. "sat_cl([true-true]) in S1".
    std::vector<std::string> justification;
};

nlohmann::json to_json(const Diagnosis& d);
std::string summary(const Diagnosis& d);

struct DiagnoseOptions {
    /// The incompleteness search keeps every answer, so the depth limit is lower than solve's.
    Budget budget{1'000, 1'000'000};
    std::size_t slack = 2;
};

/// Reproduces `wrong` as an answer with a proof, then returns the first proof-tree
/// node in post-order whose head is unspecified while its body atoms are specified.
Diagnosis diagnose_incorrectness(const Program& p, const Specification& s_corr, const Term& wrong,
                                 const Signature& sig, std::size_t bound, const DiagnoseOptions& opts = {});

/// Finds a ground instance of `query` with all atoms in s_compl that no answer
/// subsumes, then walks down from it to a specified atom no rule instance covers.
Diagnosis diagnose_incompleteness(const Program& p, const Specification& s_compl, const std::vector<Term>& query,
                                  const Signature& sig, std::size_t bound, const DiagnoseOptions& opts = {});

Diagnosis diagnose_incorrectness(const Program& p, const SpecPair& specs, const Term& wrong, const Signature& sig,
                                 std::size_t bound, const DiagnoseOptions& opts = {});
Diagnosis diagnose_incompleteness(const Program& p, const SpecPair& specs, const std::vector<Term>& query,
                                  const Signature& sig, std::size_t bound, const DiagnoseOptions& opts = {});

} // namespace logicbench
