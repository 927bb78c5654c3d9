#pragma once

#include <string>
#include <vector>

#include "doctest.h"

#include "logicbench/herbrand.hpp"
#include "logicbench/program.hpp"
#include "logicbench/substitution.hpp"
#include "logicbench/syntax.hpp"
#include "logicbench/term.hpp"

namespace lbt {

using namespace logicbench;

inline Term T(const std::string& s) { return parse_term(s); }
inline std::vector<Term> Q(const std::string& s) { return parse_query(s); }
inline Term V(const std::string& name) { return Term::variable(name); }

/// {true, false, -, [|], []}
inline Signature truth_sig() { return Signature::parse("true/0, false/0, -/2, [|]/2, []/0"); }
/// truth_sig plus the constant a.
inline Signature truth_sig_a() { return Signature::parse("true/0, false/0, -/2, [|]/2, []/0, a/0"); }

inline std::vector<std::string> texts(const std::vector<Term>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(to_text(t));
    return out;
}

} // namespace lbt

namespace doctest {
template <>
struct StringMaker<logicbench::Term> {
    static String convert(const logicbench::Term& t) { return logicbench::to_text(t).c_str(); }
};
} // namespace doctest
