#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "logicbench/herbrand.hpp"
#include "logicbench/program.hpp"
#include "logicbench/spec.hpp"

namespace logicbench {

/// |t| with |[h|t]| = |h| + |t| and |f(...)| = 1 for every other f. nullopt on a variable.
std::optional<std::uint64_t> list_norm(const Term& t);
/// listsize([h|t]) = listsize(t) + 1, 0 for any other non-variable. nullopt when a variable decides it.
std::optional<std::uint64_t> list_size(const Term& t);

enum class TermNorm { ListNorm, ListSize, NodeCount };

/// Level of ground atoms and terms. The atom function also accepts non-ground
/// atoms and returns nullopt exactly when some variable can change the value.
class LevelMapping {
public:
    using AtomLevel = std::function<std::optional<std::uint64_t>(const Term& atom)>;

    LevelMapping(std::string name, AtomLevel atom_level);

    const std::string& name() const { return name_; }
    /// Symbolic evaluation; nullopt when undefined or variable-dependent.
    std::optional<std::uint64_t> try_atom(const Term& atom) const { return atom_(atom); }

    /// Mapping for P1: |sat_cnf(t)| = |sat_cl(t)| = |t|, |t = u| = 0.
    static LevelMapping p1();
    /// Mapping for P3 (sat, sat_cnf, sat_cl, sat_cl3, sat_cl5, sat_cl5a, tflist, tf, =).
    static LevelMapping p3();

    /// |p(t1..tn)| = offset + sum of weight * norm(t_arg) over the listed arguments.
    struct WeightedTerm {
        std::size_t arg;
        std::uint64_t weight;
        TermNorm norm;
    };
    struct WeightedPredicate {
        std::uint64_t offset = 0;
        std::vector<WeightedTerm> terms;
    };
    static LevelMapping weighted(std::string name, std::map<Predicate, WeightedPredicate> table);

private:
    std::string name_;
    AtomLevel atom_;
};

/// Ground evaluation. Throws std::invalid_argument on non-ground input or an
/// atom outside the mapping's domain.
std::uint64_t level(const LevelMapping& lm, const Term& atom);
/// Term level |t| (the list norm shared by both built-in mappings).
std::uint64_t term_level(const Term& t);

/// BOUNDED(v) when every atom's level is independent of its variables; v is the
/// largest atom level. UNKNOWN otherwise. Never claims BOUNDED falsely.
struct BoundedResult {
    bool bounded = false;
    std::uint64_t level = 0;
};
BoundedResult check_bounded_query(const std::vector<Term>& query, const LevelMapping& lm);

enum class Verdict { Pass, Fail };
std::string to_string(Verdict v);

struct Witness {
    std::optional<GroundRuleInstance> instance; // violating instance (correctness, recurrence)
    std::optional<Term> atom;                   // uncovered / missing atom (coverage, probe)
    std::string detail;
    std::string text() const;
};

struct CheckReport {
    std::string check;       // correctness | coverage | recurrence | cssld | completeness-probe
    std::string subject;     // program name
    std::string against;     // specification or mapping name
    Verdict verdict = Verdict::Pass;
    std::vector<Witness> witnesses;  // first max_witnesses found
    std::size_t witness_count = 0;   // total violations found
    std::size_t bound = 0;
    std::size_t body_bound = 0;
    std::size_t instances_checked = 0;
    std::size_t atoms_checked = 0;
    bool passed() const { return verdict == Verdict::Pass; }
};

nlohmann::json to_json(const CheckReport& r);
std::string summary(const CheckReport& r);

struct CheckOptions {
    std::size_t max_witnesses = 20;
    /// Extra size allowed for variables that occur only in rule bodies (coverage).
    std::size_t slack = 2;
    std::string subject = "program";
};

/// Every head-bounded ground instance with a specified body has a specified head.
/// Head atom_size <= bound, body-only variables over terms of size <= bound.
/// Commits are projected away first.
CheckReport check_correctness(const Program& p, const Specification& s, const Signature& sig, std::size_t bound,
                              const CheckOptions& opts = {});

/// Coverage: every specified atom with atom_size <= bound is the head of a
/// ground instance whose body atoms are specified; body-only variables range over
/// terms of size <= bound + slack. Builtins not defined by the program count as covered.
CheckReport check_coverage(const Program& p, const Specification& s, const Signature& sig, std::size_t bound,
                           const CheckOptions& opts = {});

/// Ground instances (with `=` evaluated) whose head is `atom` and whose body atoms
/// are all in `s`; body-only variables over terms of size <= body_bound. At most `limit`.
/// A builtin not defined by the program yields an instance labelled "builtin" when it holds.
std::vector<GroundRuleInstance> covering_instances(const Program& p, const Specification& s, const Term& atom,
                                                   HerbrandUniverse& universe, std::size_t body_bound,
                                                   std::size_t limit = 1);

/// |H| > |B| for every body atom of every head-bounded ground instance.
CheckReport check_recurrent(const Program& p, const LevelMapping& lm, const Signature& sig, std::size_t bound,
                            const CheckOptions& opts = {});

/// Coverage of the common specification by each program; overall PASS iff all pass.
struct CssldConditionReport {
    std::vector<CheckReport> per_program;
    bool passed() const;
};
CssldConditionReport check_cssld_condition(const std::vector<Program>& programs, const Specification& s,
                                           const Signature& sig, std::size_t bound, const CheckOptions& opts = {});
nlohmann::json to_json(const CssldConditionReport& r);

struct BottomUpResult {
    std::set<Term> atoms;
    bool fixpoint = false;
    std::size_t iterations = 0;  // applications of the consequence step that added atoms
    bool contains(const Term& a) const { return atoms.count(a) != 0; }
};

/// Least fixpoint of the immediate-consequence step, keeping atoms with atom_size <= term_bound.
BottomUpResult bottom_up_model(const Program& p, const Signature& sig, std::size_t term_bound,
                               std::size_t iteration_cap = 1000);

/// Every specified atom with atom_size <= bound must be in the bottom-up model
/// computed at bound + slack.
CheckReport ground_completeness_probe(const Program& p, const Specification& s, const Signature& sig,
                                      std::size_t bound, std::size_t iteration_cap = 1000,
                                      const CheckOptions& opts = {});

/// Program signature, the specification's symbols and the extra constants.
Signature default_signature(const Program& p, const Specification* s, const std::vector<std::string>& extra_constants);

} // namespace logicbench
