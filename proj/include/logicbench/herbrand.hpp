#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "logicbench/substitution.hpp"
#include "logicbench/term.hpp"

namespace logicbench {

/// Ground terms over a signature, generated by node count and cached per size.
/// Not thread-safe (the cache is filled lazily); use one instance per session.
class HerbrandUniverse {
public:
    /// Throws std::invalid_argument when the signature has no constant.
    explicit HerbrandUniverse(Signature sig);

    const Signature& signature() const { return sig_; }

    /// All ground terms with exactly `n` nodes, in a fixed order.
    const std::vector<Term>& of_size(std::size_t n);

    /// All ground terms with at most `bound` nodes: by size, then by signature order.
    std::vector<Term> up_to(std::size_t bound);
    std::size_t count_up_to(std::size_t bound);

    /// Any constant of the signature (used to close open proof trees).
    Term some_constant() const;

    /// Tuples of ground terms, one per entry of `weights`, with
    /// sum(weights[i] * size(tuple[i])) <= budget. Stops early when `fn` returns false.
    /// Returns false iff stopped early.
    bool for_each_weighted_tuple(std::span<const std::size_t> weights, std::size_t budget,
                                 const std::function<bool(std::span<const Term>)>& fn);

    /// Every tuple with each component of size <= `bound` (product of up_to(bound)).
    bool for_each_tuple(std::size_t count, std::size_t bound, const std::function<bool(std::span<const Term>)>& fn);

private:
    void fill(std::size_t n);
    Signature sig_;
    std::vector<Functor> functors_;
    std::vector<std::vector<Term>> by_size_;
    std::vector<bool> filled_;
};

/// Exactly all ground terms over `sig` with node count <= size_bound, size-lexicographic.
std::vector<Term> enumerate_herbrand(const Signature& sig, std::size_t size_bound);

/// Sum of node counts of an atom's arguments (the predicate symbol is not counted).
std::size_t atom_size(const Term& atom);

/// Calls `fn` for each grounding of the variables in `terms` such that the total
/// atom_size-style node count of all `terms` (sum of argument sizes) stays within `budget`.
/// Variables are substituted in order of first occurrence.
bool for_each_bounded_grounding(HerbrandUniverse& universe, std::span<const Term> atoms, std::size_t budget,
                                const std::function<bool(const Substitution&)>& fn);

} // namespace logicbench
