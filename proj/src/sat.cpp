#include "logicbench/sat.hpp"

#include <charconv>
#include <sstream>

#include "logicbench/corpus.hpp"

namespace logicbench {

namespace {

bool parse_int(std::string_view tok, long long& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

} // namespace

CnfFormula parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
    CnfFormula f;
    bool header = false;
    long long declared = 0;
    std::vector<int> current;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == 'c') continue;
        if (tok == "%") break;  // SATLIB trailer
        if (tok == "p") {
            if (header) throw DimacsError(line_no, "second header");
            std::string fmt, v, c, extra;
            if (!(ls >> fmt >> v >> c) || fmt != "cnf" || (ls >> extra))
                throw DimacsError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
            long long nv = 0;
            if (!parse_int(v, nv) || nv < 0 || !parse_int(c, declared) || declared < 0)
                throw DimacsError(line_no, "malformed header counts");
            f.num_vars = static_cast<std::size_t>(nv);
            header = true;
            continue;
        }
        if (!header) throw DimacsError(line_no, "clause before 'p cnf' header");
        do {
            long long lit = 0;
            if (!parse_int(tok, lit)) throw DimacsError(line_no, "not an integer: '" + tok + "'");
            if (lit == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            const long long idx = lit < 0 ? -lit : lit;
            if (idx > static_cast<long long>(f.num_vars))
                throw DimacsError(line_no, "variable " + std::to_string(idx) + " out of range 1.." +
                                               std::to_string(f.num_vars));
            current.push_back(static_cast<int>(lit));
        } while (ls >> tok);
    }
    if (!header) throw DimacsError(line_no, "missing 'p cnf' header");
    if (!current.empty()) {
        if (warnings) warnings->push_back("last clause not terminated by 0");
        f.clauses.push_back(std::move(current));
    }
    if (warnings && static_cast<long long>(f.clauses.size()) != declared)
        warnings->push_back("header declares " + std::to_string(declared) + " clauses, found " +
                            std::to_string(f.clauses.size()));
    return f;
}

std::string to_dimacs(const CnfFormula& f) {
    std::string out = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
    for (const auto& c : f.clauses) {
        for (int l : c) out += std::to_string(l) + " ";
        out += "0\n";
    }
    return out;
}

EncodedCnf encode_cnf(const CnfFormula& f) {
    EncodedCnf e;
    for (std::size_t i = 1; i <= f.num_vars; ++i) e.variables.push_back(Term::variable("X" + std::to_string(i)));
    const Term t = Term::constant(sym::true_()), fl = Term::constant(sym::false_());
    std::vector<Term> clauses;
    for (const auto& c : f.clauses) {
        std::vector<Term> lits;
        for (int l : c) lits.push_back(Term::pair(l > 0 ? t : fl, e.variables[static_cast<std::size_t>(l > 0 ? l : -l) - 1]));
        clauses.push_back(Term::list(lits));
    }
    e.clauses = Term::list(clauses);
    e.variable_list = Term::list(e.variables);
    e.query = Term::compound("sat", {e.clauses, e.variable_list});
    return e;
}

Assignment decode_assignment(const Term& answer) {
    if (!answer.has_functor(Symbol("sat"), 2)) throw std::invalid_argument("expected sat(F, L), got " + to_text(answer));
    const Term& l = answer.arg(1);
    if (!is_proper_list(l)) throw std::invalid_argument("variable list is not a proper list: " + to_text(l));
    Assignment a;
    std::size_t i = 0;
    for (const Term& v : list_elements(l)) {
        ++i;
        if (v.has_functor(sym::true_(), 0)) a[i] = true;
        else if (v.has_functor(sym::false_(), 0)) a[i] = false;
        else throw std::invalid_argument("element " + std::to_string(i) + " is not a truth value: " + to_text(v));
    }
    return a;
}

bool evaluate(const CnfFormula& f, const Assignment& a) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int l : c) {
            auto it = a.find(static_cast<std::size_t>(l > 0 ? l : -l));
            if (it != a.end() && it->second == (l > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::string to_string(SatVariant v) {
    switch (v) {
    case SatVariant::P1: return "p1";
    case SatVariant::P3: return "p3";
    case SatVariant::P3Control: return "p3-control";
    case SatVariant::CssldP31P32: return "cssld";
    }
    return "?";
}

SatVariant parse_variant(std::string_view text) {
    for (SatVariant v : all_variants())
        if (to_string(v) == text) return v;
    throw std::invalid_argument("unknown variant '" + std::string(text) + "' (p1, p3, p3-control, cssld)");
}

const std::vector<SatVariant>& all_variants() {
    static const std::vector<SatVariant> v = {SatVariant::P1, SatVariant::P3, SatVariant::P3Control,
                                              SatVariant::CssldP31P32};
    return v;
}

std::string to_string(SatStatus s) {
    switch (s) {
    case SatStatus::Sat: return "SAT";
    case SatStatus::Unsat: return "UNSAT";
    case SatStatus::Indeterminate: return "INDETERMINATE";
    }
    return "?";
}

SatResult solve_sat(const CnfFormula& f, SatVariant variant, Budget budget) {
    const EncodedCnf e = encode_cnf(f);
    SolveOptions so;
    so.budget = budget;
    so.max_answers = 1;

    Outcome o;
    switch (variant) {
    case SatVariant::P1:
        o = solve(corpus_program("P1"), {Term::compound("sat_cnf", {e.clauses})}, so);
        break;
    case SatVariant::P3: o = solve(corpus_program("P3"), {e.query}, so); break;
    case SatVariant::P3Control: o = solve(corpus_program("P3_CONTROL"), {e.query}, so); break;
    case SatVariant::CssldP31P32:
        o = cssld_outcome(p31_p32(), ClauseSelectionRule::nonvar_driven(), {e.query}, so);
        break;
    }

    SatResult r;
    r.variant = to_string(variant);
    r.steps = o.steps;
    r.floundered = o.floundered;
    if (!o.answers.empty()) {
        r.status = SatStatus::Sat;
        for (std::size_t i = 0; i < e.variables.size(); ++i) {
            const Term* v = o.answers.front().substitution.find(e.variables[i].var());
            if (v && v->has_functor(sym::true_(), 0)) r.assignment[i + 1] = true;
            else if (v && v->has_functor(sym::false_(), 0)) r.assignment[i + 1] = false;
            else r.complete_assignment = false;
        }
        return r;
    }
    if (o.floundered) r.reason = "flounder";
    else if (!o.exhaustive || o.budget_hit) r.reason = "budget";
    else r.status = SatStatus::Unsat;
    return r;
}

SatResult brute_force_sat(const CnfFormula& f, std::size_t cap) {
    if (f.num_vars > cap)
        throw std::invalid_argument("brute force limited to " + std::to_string(cap) + " variables, formula has " +
                                    std::to_string(f.num_vars));
    SatResult r;
    r.variant = "brute-force";
    const std::size_t n = f.num_vars;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ++r.steps;
        Assignment a;
        for (std::size_t i = 1; i <= n; ++i) a[i] = (bits >> (n - i)) & 1u;
        if (evaluate(f, a)) {
            r.status = SatStatus::Sat;
            r.assignment = std::move(a);
            return r;
        }
    }
    r.status = SatStatus::Unsat;
    return r;
}

std::string to_dimacs_output(const SatResult& r) {
    std::string out = "s " + to_string(r.status);
    if (r.status == SatStatus::Indeterminate && !r.reason.empty()) out += " (" + r.reason + ")";
    out += "\n";
    if (r.status == SatStatus::Sat) {
        out += "v";
        for (const auto& [i, b] : r.assignment) out += " " + std::string(b ? "" : "-") + std::to_string(i);
        out += " 0\n";
        if (!r.complete_assignment) out += "c partial assignment: unlisted variables are unconstrained\n";
    }
    return out;
}

nlohmann::json to_json(const SatResult& r) {
    nlohmann::json j;
    j["status"] = to_string(r.status);
    j["variant"] = r.variant;
    if (r.status == SatStatus::Sat) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& [i, b] : r.assignment) a.push_back(b ? static_cast<long long>(i) : -static_cast<long long>(i));
        j["assignment"] = a;  // signed literals, DIMACS style
        j["complete_assignment"] = r.complete_assignment;
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["floundered"] = r.floundered;
    j["steps"] = r.steps;
    return j;
}

} // namespace logicbench
