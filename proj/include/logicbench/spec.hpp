#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logicbench/herbrand.hpp"
#include "logicbench/program.hpp"
#include "logicbench/term.hpp"

namespace logicbench {

/// [t1,...,tn|s], n > 0, some ti of the form u-u; s arbitrary.
bool in_L1(const Term& t);
/// Proper nonempty list of pairs ti-ui with some ti = ui.
bool in_L1_0(const Term& t);
/// Proper list whose elements are all in L1 (resp. L1_0).
bool in_L2(const Term& t);
bool in_L2_0(const Term& t);
/// Proper list whose elements are all `true` or `false`.
bool is_truth_list(const Term& t);

/// A Herbrand interpretation with decidable membership, given per predicate.
/// Atoms of predicates absent from the table are not specified.
class Specification {
public:
    using Membership = std::function<bool(const Term& atom)>;

    Specification() = default;
    Specification(std::string name, std::map<Predicate, Membership> table, Signature contributed = {});

    const std::string& name() const { return name_; }
    /// Throws std::invalid_argument on a non-ground atom.
    bool contains(const Term& atom) const;
    bool specifies(const Predicate& p) const { return table_.count(p) != 0; }
    std::vector<Predicate> predicates() const;
    /// Function symbols the specification talks about (merged into default signatures).
    const Signature& signature() const { return sig_; }

    /// Every specified atom over `sig` with atom_size <= bound, by predicate, then size.
    std::vector<Term> enumerate(HerbrandUniverse& universe, std::size_t bound) const;
    std::vector<Term> enumerate(const Signature& sig, std::size_t bound) const;

    /// Copy with the membership of `p` replaced (or added).
    Specification with(const Predicate& p, Membership m, std::string name = {}) const;
    /// Union of two interpretations (membership ORed per predicate).
    static Specification unite(const Specification& a, const Specification& b, std::string name = {});

private:
    std::string name_;
    std::map<Predicate, Membership> table_;
    Signature sig_;
};

/// Separate specifications for correctness and completeness, S_compl within S_corr.
struct SpecPair {
    Specification for_correctness;
    Specification for_completeness;
};

/// First atom of for_completeness (within bound) missing from for_correctness, if any.
std::optional<Term> pair_inclusion_violation(const SpecPair& pair, const Signature& sig, std::size_t bound);

Specification spec_S1();
/// S1 plus every sat_cl/1 atom.
Specification spec_S1_prime();
Specification spec_S2();
Specification spec_S2_0();
Specification spec_S3();
Specification spec_S3_0();
/// For the csSLD counterexample program: q(s^i(0)); p(y,0) for any y; p(a,s^i(0)); p(b,s^i(0)).
Specification spec_cssld_counterexample();
/// p(s^i(0)) for all i, and q(0).
Specification spec_appendix_example();

/// Lookup by name: S1, S1_PRIME, S2, S2_0, S3, S3_0, S_CSSLD, S_APPENDIX, or a registered name.
/// Throws std::out_of_range.
Specification spec_by_name(std::string_view name);
std::vector<std::string> spec_names();
/// Adds (or replaces) a named specification in the process-wide registry.
void register_spec(const Specification& s);

} // namespace logicbench
