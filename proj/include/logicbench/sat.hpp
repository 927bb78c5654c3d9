#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "logicbench/engine.hpp"
#include "logicbench/term.hpp"

namespace logicbench {

/// Clauses of signed 1-based variable indices. An empty clause is accepted and unsatisfiable.
struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

class DimacsError : public std::runtime_error {
public:
    DimacsError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// `p cnf V C` header, zero-terminated clauses (possibly spanning lines), `c` comments.
/// Throws DimacsError on a malformed header or an out-of-range index; a clause count
/// that differs from the header is reported through `warnings` only.
CnfFormula parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string to_dimacs(const CnfFormula& f);

struct EncodedCnf {
    Term clauses;                 // [[true-X1,false-X2],...]
    std::vector<Term> variables;  // X1..Xn, ascending index
    Term variable_list;           // [X1,...,Xn]
    Term query;                   // sat(clauses, variable_list)
};

EncodedCnf encode_cnf(const CnfFormula& f);

using Assignment = std::map<std::size_t, bool>;

/// Positional reading of L in a ground sat(F, L). Throws std::invalid_argument when
/// L is not a proper list of true/false.
Assignment decode_assignment(const Term& sat_answer);

/// Independent evaluator: every clause has a literal made true by `a`.
/// Variables missing from `a` make no literal true.
bool evaluate(const CnfFormula& f, const Assignment& a);

enum class SatVariant { P1, P3, P3Control, CssldP31P32 };
std::string to_string(SatVariant v);
/// "p1", "p3", "p3-control", "cssld". Throws std::invalid_argument.
SatVariant parse_variant(std::string_view text);
const std::vector<SatVariant>& all_variants();

enum class SatStatus { Sat, Unsat, Indeterminate };
std::string to_string(SatStatus s);

struct SatResult {
    SatStatus status = SatStatus::Indeterminate;
    Assignment assignment;
    /// False when the success left some variables unbound (P1 only checks satisfiability).
    bool complete_assignment = true;
    std::string reason;  // "budget" or "flounder" for INDETERMINATE
    bool floundered = false;
    std::size_t steps = 0;
    std::string variant;
};

/// Runs the corpus solver for `variant` with max_answers 1. UNSAT only when the
/// search was exhaustive and nothing floundered.
SatResult solve_sat(const CnfFormula& f, SatVariant variant, Budget budget = default_budget());

/// Truth-table search in lexicographic order (variable 1 most significant, false
/// before true); SAT carries the first satisfying assignment. Throws
/// std::invalid_argument when num_vars exceeds `cap`.
SatResult brute_force_sat(const CnfFormula& f, std::size_t cap = 20);

/// Solver-style text: "s SAT" / "s UNSAT" / "s INDETERMINATE" and a "v ... 0" line.
std::string to_dimacs_output(const SatResult& r);
nlohmann::json to_json(const SatResult& r);

} // namespace logicbench
