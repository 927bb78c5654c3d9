#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "logicbench/program.hpp"

namespace logicbench {

/// Named built-in programs: P1, P2, P3, P31, P32, P3_CONTROL, CSSLD_COUNTEREXAMPLE,
/// plus P2_BLOCK (P2 with the sat_cl5 block declaration), P1_BUGGY (P1 with the
/// recursive sat_cl rule calling sat_cl([Pairs])) and APPENDIX_EXAMPLE.
const std::map<std::string, Program>& builtin_corpus();

/// Source text of a corpus program (what builtin_corpus() parsed).
const std::string& corpus_source(std::string_view name);

/// Throws std::out_of_range with the list of known names.
const Program& corpus_program(std::string_view name);

std::vector<std::string> corpus_names();

/// The two programs of the csSLD counterexample: each keeps only one of the
/// recursive p/2 rules (the `a` chain for the first, the `b` chain for the second).
std::vector<Program> cssld_counterexample_programs();

/// [P31, P32], in that order.
std::vector<Program> p31_p32();

} // namespace logicbench
