#include "logicbench/herbrand.hpp"

#include <stdexcept>

namespace logicbench {

HerbrandUniverse::HerbrandUniverse(Signature sig) : sig_(std::move(sig)) {
    if (!sig_.has_constant()) throw std::invalid_argument("signature has no constant: " + to_string(sig_));
    // Constants first, then by arity; std::set order gives name order within each arity.
    for (std::size_t arity = 0;; ++arity) {
        bool any_larger = false;
        for (const auto& f : sig_.functors()) {
            if (f.arity == arity) functors_.push_back(f);
            if (f.arity > arity) any_larger = true;
        }
        if (!any_larger) break;
    }
}

Term HerbrandUniverse::some_constant() const { return Term::constant(functors_.front().name); }

void HerbrandUniverse::fill(std::size_t n) {
    if (by_size_.size() <= n) {
        by_size_.resize(n + 1);
        filled_.resize(n + 1, false);
    }
    if (filled_[n]) return;
    std::vector<Term> out;
    if (n >= 1) {
        for (const auto& f : functors_) {
            if (f.arity == 0) {
                if (n == 1) out.push_back(Term::constant(f.name));
                continue;
            }
            if (n - 1 < f.arity) continue;
            // Distribute n-1 nodes over the arguments, each getting at least one.
            std::vector<std::size_t> split(f.arity);
            std::vector<Term> args;
            std::function<void(std::size_t)> build = [&](std::size_t i) {
                if (i == f.arity) {
                    out.push_back(Term::compound(f.name, args));
                    return;
                }
                for (const Term& c : by_size_[split[i]]) {
                    args.push_back(c);
                    build(i + 1);
                    args.pop_back();
                }
            };
            std::function<void(std::size_t, std::size_t)> distribute = [&](std::size_t i, std::size_t left) {
                if (i + 1 == f.arity) {
                    split[i] = left;
                    build(0);
                    return;
                }
                for (std::size_t s = 1; s + (f.arity - i - 1) <= left; ++s) {
                    split[i] = s;
                    distribute(i + 1, left - s);
                }
            };
            distribute(0, n - 1);
        }
    }
    by_size_[n] = std::move(out);
    filled_[n] = true;
}

const std::vector<Term>& HerbrandUniverse::of_size(std::size_t n) {
    // Fill smaller sizes first: fill(n) reads them and may resize by_size_.
    for (std::size_t k = 0; k <= n; ++k)
        if (k >= filled_.size() || !filled_[k]) fill(k);
    return by_size_[n];
}

std::vector<Term> HerbrandUniverse::up_to(std::size_t bound) {
    std::vector<Term> out;
    for (std::size_t n = 1; n <= bound; ++n) {
        const auto& v = of_size(n);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::size_t HerbrandUniverse::count_up_to(std::size_t bound) {
    std::size_t c = 0;
    for (std::size_t n = 1; n <= bound; ++n) c += of_size(n).size();
    return c;
}

bool HerbrandUniverse::for_each_weighted_tuple(std::span<const std::size_t> weights, std::size_t budget,
                                               const std::function<bool(std::span<const Term>)>& fn) {
    std::vector<Term> tuple(weights.size());
    std::size_t min_rest = 0;
    for (auto w : weights) min_rest += w;
    std::function<bool(std::size_t, std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t left,
                                                                         std::size_t rest_min) -> bool {
        if (i == weights.size()) return fn(tuple);
        const std::size_t w = weights[i];
        const std::size_t after = rest_min - w;
        for (std::size_t s = 1; w * s + after <= left; ++s) {
            for (const Term& t : of_size(s)) {
                tuple[i] = t;
                if (!go(i + 1, left - w * s, after)) return false;
            }
            if (w == 0) break;
        }
        return true;
    };
    if (min_rest > budget) return true;
    // Fill the cache up front: growing it later would invalidate references held by `go`.
    of_size(budget + 1);
    return go(0, budget, min_rest);
}

bool HerbrandUniverse::for_each_tuple(std::size_t count, std::size_t bound,
                                      const std::function<bool(std::span<const Term>)>& fn) {
    const std::vector<Term> pool = up_to(bound);
    std::vector<Term> tuple(count);
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == count) return fn(tuple);
        for (const Term& t : pool) {
            tuple[i] = t;
            if (!go(i + 1)) return false;
        }
        return true;
    };
    return go(0);
}

std::vector<Term> enumerate_herbrand(const Signature& sig, std::size_t size_bound) {
    if (size_bound == 0) throw std::invalid_argument("size bound must be positive");
    HerbrandUniverse u(sig);
    return u.up_to(size_bound);
}

std::size_t atom_size(const Term& atom) { return atom.is_var() ? 1 : atom.size() - 1; }

namespace {

void count_occurrences(const Term& t, std::vector<Variable>& vars, std::vector<std::size_t>& weights,
                       std::size_t& fixed) {
    if (t.is_var()) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == t.var()) {
                ++weights[i];
                return;
            }
        vars.push_back(t.var());
        weights.push_back(1);
        return;
    }
    ++fixed;
    for (const Term& a : t.args()) count_occurrences(a, vars, weights, fixed);
}

} // namespace

bool for_each_bounded_grounding(HerbrandUniverse& universe, std::span<const Term> atoms, std::size_t budget,
                                const std::function<bool(const Substitution&)>& fn) {
    std::vector<Variable> vars;
    std::vector<std::size_t> weights;
    std::size_t fixed = 0;
    for (const Term& a : atoms) {
        if (a.is_var()) throw std::invalid_argument("atom expected, found a variable");
        for (const Term& arg : a.args()) count_occurrences(arg, vars, weights, fixed);
    }
    if (fixed > budget) return true;
    return universe.for_each_weighted_tuple(weights, budget - fixed, [&](std::span<const Term> tuple) {
        Substitution::Map m;
        for (std::size_t i = 0; i < vars.size(); ++i) m.emplace(vars[i], tuple[i]);
        return fn(Substitution(std::move(m)));
    });
}

} // namespace logicbench
