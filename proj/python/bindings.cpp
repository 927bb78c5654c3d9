// Python bindings. Structured results cross the boundary as JSON text; the
// package's __init__ turns them into dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>

#include "logicbench/cli.hpp"
#include "logicbench/corpus.hpp"
#include "logicbench/diagnoser.hpp"
#include "logicbench/engine.hpp"
#include "logicbench/sat.hpp"
#include "logicbench/spec.hpp"
#include "logicbench/syntax.hpp"
#include "logicbench/verifier.hpp"

namespace py = pybind11;
using namespace logicbench;

namespace {

// "corpus:NAME" or program text.
Program program_of(const std::string& ref) {
    if (ref.rfind("corpus:", 0) == 0) return corpus_program(ref.substr(7));
    return parse_program(ref);
}

Signature signature_for(const Program& p, const Specification* s, const std::vector<std::string>& extra) {
    return default_signature(p, s, extra);
}

Budget budget_of(std::size_t max_steps, std::size_t max_depth) {
    Budget b = default_budget();
    if (max_steps) b.max_steps = max_steps;
    if (max_depth) b.max_depth = max_depth;
    return b;
}

std::string solve_json(const std::string& program, const std::string& query, const std::string& selection,
                       std::size_t max_answers, bool proofs, std::size_t max_steps, std::size_t max_depth) {
    SolveOptions so;
    so.selection = parse_selection(selection);
    so.max_answers = max_answers;
    so.track_proofs = proofs;
    so.budget = budget_of(max_steps, max_depth);
    return to_json(solve(program_of(program), parse_query(query), so)).dump();
}

std::string tree_json(const std::string& program, const std::string& query, const std::string& selection,
                      std::size_t max_steps, std::size_t max_depth) {
    return to_json(build_tree(program_of(program), parse_query(query), parse_selection(selection),
                              budget_of(max_steps, max_depth)))
        .dump();
}

std::string sat_json(const std::string& dimacs, const std::string& variant, std::size_t max_steps) {
    const CnfFormula f = parse_dimacs(dimacs);
    const SatResult r = variant == "brute-force" ? brute_force_sat(f) : solve_sat(f, parse_variant(variant), budget_of(max_steps, 0));
    return to_json(r).dump();
}

std::string check_json(const std::string& kind, const std::vector<std::string>& programs, const std::string& spec_name,
                       std::size_t bound, const std::string& mapping, std::size_t slack,
                       const std::vector<std::string>& extra) {
    if (programs.empty()) throw std::invalid_argument("no program given");
    if (kind != "cssld" && programs.size() != 1) throw std::invalid_argument("check " + kind + " takes one program");
    CheckOptions co;
    co.slack = slack;
    std::optional<Specification> spec;
    if (!spec_name.empty()) spec = spec_by_name(spec_name);
    if (kind != "recurrence" && !spec) throw std::invalid_argument("check " + kind + " needs a specification");
    const Specification* sp = spec ? &*spec : nullptr;

    if (kind == "cssld") {
        std::vector<Program> ps;
        Signature sig;
        for (const auto& ref : programs) {
            ps.push_back(program_of(ref));
            sig.merge(signature_for(ps.back(), sp, extra));
        }
        return to_json(check_cssld_condition(ps, *spec, sig, bound, co)).dump();
    }
    const Program p = program_of(programs.front());
    const Signature sig = signature_for(p, sp, extra);
    if (kind == "correctness") return to_json(check_correctness(p, *spec, sig, bound, co)).dump();
    if (kind == "coverage") return to_json(check_coverage(p, *spec, sig, bound, co)).dump();
    if (kind == "recurrence") {
        LevelMapping lm = mapping == "p1" ? LevelMapping::p1() : LevelMapping::p3();
        if (mapping != "p1" && mapping != "p3") throw std::invalid_argument("mapping must be p1 or p3");
        return to_json(check_recurrent(p, lm, sig, bound, co)).dump();
    }
    throw std::invalid_argument("unknown check '" + kind + "' (correctness, coverage, recurrence, cssld)");
}

std::string diagnose_json(const std::string& kind, const std::string& program, const std::string& target,
                          const std::string& spec_name, std::size_t bound, const std::vector<std::string>& extra) {
    const Program p = program_of(program);
    const Specification spec = spec_by_name(spec_name);
    const Signature sig = signature_for(p, &spec, extra);
    if (kind == "wrong-answer") return to_json(diagnose_incorrectness(p, spec, parse_term(target), sig, bound)).dump();
    if (kind == "missing-answer") return to_json(diagnose_incompleteness(p, spec, parse_query(target), sig, bound)).dump();
    throw std::invalid_argument("unknown diagnosis '" + kind + "' (wrong-answer, missing-answer)");
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Logic program verification workbench (native core)";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DimacsError>(m, "DimacsError", PyExc_ValueError);

    m.def("corpus_names", &corpus_names);
    m.def("corpus_source", [](const std::string& name) { return corpus_source(name); }, py::arg("name"));
    m.def("spec_names", &spec_names);
    m.def("normalize_program", [](const std::string& program) { return to_text(program_of(program)); },
          py::arg("program"), "Program text as printed after parsing.");

    m.def("solve_json", &solve_json, py::arg("program"), py::arg("query"), py::arg("selection") = "leftmost-selectable",
          py::arg("max_answers") = 0, py::arg("proofs") = false, py::arg("max_steps") = 0, py::arg("max_depth") = 0);
    m.def("tree_json", &tree_json, py::arg("program"), py::arg("query"), py::arg("selection") = "leftmost-selectable",
          py::arg("max_steps") = 0, py::arg("max_depth") = 0);
    m.def("sat_json", &sat_json, py::arg("dimacs"), py::arg("variant") = "p3-control", py::arg("max_steps") = 0);
    m.def("check_json", &check_json, py::arg("kind"), py::arg("programs"), py::arg("spec") = "", py::arg("bound") = 6,
          py::arg("mapping") = "p3", py::arg("slack") = 2, py::arg("extra_constants") = std::vector<std::string>{"a"});
    m.def("diagnose_json", &diagnose_json, py::arg("kind"), py::arg("program"), py::arg("target"), py::arg("spec"),
          py::arg("bound") = 6, py::arg("extra_constants") = std::vector<std::string>{"a"});
    m.def("run_cli", &run_cli, py::arg("args"), "Runs the command line tool in-process: (exit_code, stdout, stderr).");
}
