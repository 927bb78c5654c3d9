#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "logicbench/sat.hpp"
#include "logicbench/term.hpp"

namespace lbt {

/// Every clause over variables 1..n with 1..max_len literals, as a set of literals
/// (ascending by |lit|, positive first). With `tautologies`, x and -x may share a clause.
inline std::vector<std::vector<int>> all_clauses(int n, int max_len, bool tautologies) {
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v) {
        lits.push_back(v);
        lits.push_back(-v);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (!cur.empty()) out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_len) return;
        for (std::size_t i = from; i < lits.size(); ++i) {
            bool clash = false;
            for (int l : cur) clash = clash || l == lits[i] || (!tautologies && std::abs(l) == std::abs(lits[i]));
            if (clash) continue;
            cur.push_back(lits[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Calls fn for every formula with num_vars = n made of at most `max_clauses`
/// clauses drawn from `clauses` as a multiset (nondecreasing clause index).
inline std::size_t for_each_formula(int n, const std::vector<std::vector<int>>& clauses, int max_clauses,
                                    const std::function<void(const logicbench::CnfFormula&)>& fn) {
    std::size_t count = 0;
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        logicbench::CnfFormula f;
        f.num_vars = static_cast<std::size_t>(n);
        for (std::size_t i : idx) f.clauses.push_back(clauses[i]);
        fn(f);
        ++count;
        if (static_cast<int>(idx.size()) == max_clauses) return;
        for (std::size_t i = from; i < clauses.size(); ++i) {
            idx.push_back(i);
            rec(i);
            idx.pop_back();
        }
    };
    rec(0);
    return count;
}

/// Truth value of a formula under a total assignment; written apart from the library.
inline bool formula_holds(const logicbench::CnfFormula& f, const std::map<std::size_t, bool>& a) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int l : c) {
            auto it = a.find(static_cast<std::size_t>(std::abs(l)));
            if (it != a.end() && it->second == (l > 0)) sat = true;
        }
        if (!sat) return false;
    }
    return true;
}

/// Deterministic source of small integers (mt19937 output is fixed by the standard).
class Rng {
public:
    explicit Rng(std::uint32_t seed) : g_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }
    bool coin() { return below(2) == 1; }

private:
    std::mt19937 g_;
};

inline logicbench::CnfFormula random_formula(Rng& r, int max_vars, int max_clauses, int max_len) {
    logicbench::CnfFormula f;
    f.num_vars = 1 + r.below(static_cast<std::size_t>(max_vars));
    const std::size_t nc = r.below(static_cast<std::size_t>(max_clauses) + 1);
    for (std::size_t i = 0; i < nc; ++i) {
        std::vector<int> c;
        const std::size_t len = 1 + r.below(static_cast<std::size_t>(max_len));
        for (std::size_t k = 0; k < len; ++k) {
            const int v = 1 + static_cast<int>(r.below(f.num_vars));
            c.push_back(r.coin() ? v : -v);
        }
        f.clauses.push_back(c);
    }
    return f;
}

/// P1 intended query sat_cnf(t): a clause list whose pairs have a truth-value
/// polarity and a variable or truth value as second component.
inline logicbench::Term random_p1_query(Rng& r, std::size_t max_clauses, std::size_t max_len) {
    using logicbench::Term;
    static const char* names[] = {"X", "Y", "Z"};
    std::vector<Term> clauses;
    const std::size_t nc = r.below(max_clauses + 1);
    for (std::size_t i = 0; i < nc; ++i) {
        std::vector<Term> pairs;
        const std::size_t len = 1 + r.below(max_len);
        for (std::size_t k = 0; k < len; ++k) {
            const Term pol = Term::constant(r.coin() ? "true" : "false");
            const std::size_t pick = r.below(4);
            const Term var = pick < 3 ? Term::variable(names[pick]) : Term::constant(r.coin() ? "true" : "false");
            pairs.push_back(Term::pair(pol, var));
        }
        clauses.push_back(Term::list(pairs));
    }
    return Term::compound("sat_cnf", {Term::list(clauses)});
}

} // namespace lbt
