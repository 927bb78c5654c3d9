#include "logicbench/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "logicbench/corpus.hpp"
#include "logicbench/diagnoser.hpp"
#include "logicbench/engine.hpp"
#include "logicbench/sat.hpp"
#include "logicbench/spec.hpp"
#include "logicbench/verifier.hpp"

namespace logicbench::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    std::string name;
    Program program;
};

Loaded load_program(const std::string& ref, std::ostream& err) {
    if (ref.rfind("corpus:", 0) == 0) {
        const std::string name = ref.substr(7);
        try {
            return {name, corpus_program(name)};
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
    }
    ParsedProgram pp = parse_program_with_warnings(read_file(ref));
    for (const auto& w : pp.warnings) err << "warning: " << ref << ": " << w << "\n";
    return {ref, std::move(pp.program)};
}

Specification load_spec(const std::string& name) {
    try {
        return spec_by_name(name);
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct BudgetFlags {
    std::size_t max_steps = 0;  // 0: default
    std::size_t max_depth = 0;

    void attach(CLI::App* app) {
        app->add_option("--max-steps", max_steps, "resolution step budget (default 10^6 or LOGICBENCH_BUDGET)");
        app->add_option("--max-depth", max_depth, "derivation depth limit (default 10^4)");
    }
    Budget budget(Budget base = default_budget()) const {
        if (max_steps) base.max_steps = max_steps;
        if (max_depth) base.max_depth = max_depth;
        return base;
    }
};

struct SigFlags {
    std::string extra = "a";
    std::string replace;

    void attach(CLI::App* app) {
        app->add_option("--extra-constants", extra, "constants added to the signature (comma separated)")
            ->capture_default_str();
        app->add_option("--signature", replace, "full signature, e.g. \"a/0, f/1\" (overrides the default)");
    }
    Signature make(const Program& p, const Specification* s) const {
        if (!replace.empty()) {
            try {
                return Signature::parse(replace);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
        return default_signature(p, s, split_csv(extra));
    }
};

LevelMapping pick_mapping(const std::string& name, const Program& p) {
    if (name == "p1") return LevelMapping::p1();
    if (name == "p3") return LevelMapping::p3();
    if (name != "auto") throw UsageError("unknown mapping '" + name + "' (auto, p1, p3)");
    for (const Predicate& q : p.defined_predicates()) {
        const std::string n = q.name.name();
        if (n != "sat_cnf" && n != "sat_cl" && n != "=") return LevelMapping::p3();
    }
    return LevelMapping::p1();
}

ClauseSelectionRule pick_csr(const std::string& name) {
    if (name == "alternate") return ClauseSelectionRule::alternate();
    if (name == "nonvar") return ClauseSelectionRule::nonvar_driven();
    if (name.rfind("always:", 0) == 0) {
        try {
            return ClauseSelectionRule::always(std::stoul(name.substr(7)));
        } catch (const std::exception&) {
        }
    }
    throw UsageError("unknown clause selection '" + name + "' (alternate, nonvar, always:<i>)");
}

Selection pick_selection(const std::string& name) {
    try {
        return parse_selection(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

class Cli {
public:
    Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args) {
        CLI::App app{"logicbench: SLD engine, specification checks and SAT corpus"};
        app.name("logicbench");
        app.require_subcommand(1);
        int code = Ok;

        // solve
        auto* solve_cmd = app.add_subcommand("solve", "run a query depth-first and print its answers");
        std::string prog, query, selection = "leftmost-selectable";
        std::size_t max_answers = 0;
        bool json = false, proofs = false;
        BudgetFlags budget;
        solve_cmd->add_option("program", prog, "file or corpus:NAME")->required();
        solve_cmd->add_option("query", query, "conjunction of atoms")->required();
        solve_cmd->add_option("--selection", selection, "leftmost | rightmost | leftmost-selectable")->capture_default_str();
        solve_cmd->add_option("--max-answers", max_answers, "stop after N answers (0 = all)");
        solve_cmd->add_flag("--proofs", proofs, "print proof terms");
        solve_cmd->add_flag("--json", json, "JSON output");
        budget.attach(solve_cmd);
        solve_cmd->callback([&] { code = do_solve(prog, query, selection, max_answers, proofs, json, budget); });

        // sat
        auto* sat_cmd = app.add_subcommand("sat", "decide a DIMACS formula with a corpus solver");
        std::string cnf, variant = "p3-control";
        bool compare = false;
        sat_cmd->add_option("dimacs", cnf, "DIMACS cnf file ('-' for stdin)")->required();
        sat_cmd->add_option("--variant", variant, "p1 | p3 | p3-control | cssld")->capture_default_str();
        sat_cmd->add_flag("--compare", compare, "also run the brute-force oracle and report disagreement");
        sat_cmd->add_flag("--json", json, "JSON output");
        budget.attach(sat_cmd);
        sat_cmd->callback([&] { code = do_sat(cnf, variant, compare, json, budget); });

        // check
        auto* check_cmd = app.add_subcommand("check", "bounded correctness / coverage / recurrence / csSLD checks");
        std::string kind, spec, mapping = "auto";
        std::vector<std::string> programs;
        std::size_t bound = 6, max_witnesses = 20, slack = 2;
        SigFlags sig;
        check_cmd->add_option("kind", kind, "correctness | coverage | recurrence | cssld")
            ->required()
            ->check(CLI::IsMember({"correctness", "coverage", "recurrence", "cssld"}));
        check_cmd->add_option("programs", programs, "file or corpus:NAME (several for cssld)")->required();
        check_cmd->add_option("--spec", spec, "specification name");
        check_cmd->add_option("--bound", bound, "atom size bound")->capture_default_str()->check(CLI::PositiveNumber);
        check_cmd->add_option("--mapping", mapping, "level mapping for recurrence: auto | p1 | p3")->capture_default_str();
        check_cmd->add_option("--slack", slack, "extra size for body-only variables in coverage")->capture_default_str();
        check_cmd->add_option("--max-witnesses", max_witnesses, "witnesses to report")->capture_default_str();
        check_cmd->add_flag("--json", json, "JSON output");
        sig.attach(check_cmd);
        check_cmd->callback([&] { code = do_check(kind, programs, spec, bound, mapping, slack, max_witnesses, sig, json); });

        // diagnose
        auto* diag_cmd = app.add_subcommand("diagnose", "locate an incorrect rule instance or an uncovered atom");
        std::string dkind, target;
        diag_cmd->add_option("kind", dkind, "wrong-answer | missing-answer")
            ->required()
            ->check(CLI::IsMember({"wrong-answer", "missing-answer"}));
        diag_cmd->add_option("program", prog, "file or corpus:NAME")->required();
        diag_cmd->add_option("target", target, "wrong answer atom, or the query missing an answer")->required();
        diag_cmd->add_option("--spec", spec, "specification name")->required();
        diag_cmd->add_option("--bound", bound, "atom size bound")->capture_default_str()->check(CLI::PositiveNumber);
        diag_cmd->add_flag("--json", json, "JSON output");
        sig.attach(diag_cmd);
        budget.attach(diag_cmd);
        diag_cmd->callback([&] { code = do_diagnose(dkind, prog, target, spec, bound, sig, budget, json); });

        // tree
        auto* tree_cmd = app.add_subcommand("tree", "export a derivation tree as JSON");
        std::string out_path = "-", csr = "alternate";
        std::vector<std::string> with;
        tree_cmd->add_option("program", prog, "file or corpus:NAME")->required();
        tree_cmd->add_option("query", query, "conjunction of atoms")->required();
        tree_cmd->add_option("--out", out_path, "output file ('-' for stdout)")->capture_default_str();
        tree_cmd->add_option("--selection", selection, "leftmost | rightmost | leftmost-selectable")->capture_default_str();
        tree_cmd->add_option("--with", with, "further programs: build a csSLD tree over all of them");
        tree_cmd->add_option("--csr", csr, "clause selection for csSLD: alternate | nonvar | always:<i>")->capture_default_str();
        budget.attach(tree_cmd);
        tree_cmd->callback([&] { code = do_tree(prog, query, out_path, selection, with, csr, budget); });

        // corpus
        auto* corpus_cmd = app.add_subcommand("corpus", "built-in programs and specifications");
        corpus_cmd->require_subcommand(1);
        auto* list_cmd = corpus_cmd->add_subcommand("list", "list corpus programs and specifications");
        list_cmd->add_flag("--json", json, "JSON output");
        list_cmd->callback([&] { code = do_corpus_list(json); });
        auto* show_cmd = corpus_cmd->add_subcommand("show", "print a corpus program");
        std::string show_name;
        show_cmd->add_option("name", show_name, "program name")->required();
        show_cmd->callback([&] { code = do_corpus_show(show_name); });

        std::vector<std::string> argv_store;
        argv_store.push_back("logicbench");
        argv_store.insert(argv_store.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : argv_store) argv.push_back(a.c_str());

        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out_ << app.help();
            return Ok;
        } catch (const CLI::CallForAllHelp& e) {
            out_ << app.help("", CLI::AppFormatMode::All);
            return Ok;
        } catch (const CLI::CallForVersion&) {
            out_ << "logicbench 1.0.0\n";
            return Ok;
        } catch (const CLI::ParseError& e) {
            err_ << "error: " << e.what() << "\n";
            return Usage;
        } catch (const UsageError& e) {
            err_ << "error: " << e.what() << "\n";
            return Usage;
        } catch (const ParseError& e) {
            err_ << "parse error: " << e.what() << "\n";
            return Usage;
        } catch (const DimacsError& e) {
            err_ << "DIMACS error: " << e.what() << "\n";
            return Usage;
        } catch (const std::invalid_argument& e) {
            err_ << "error: " << e.what() << "\n";
            return Usage;
        } catch (const std::out_of_range& e) {
            err_ << "error: " << e.what() << "\n";
            return Usage;
        }
        return code;
    }

private:
    int do_solve(const std::string& prog, const std::string& query, const std::string& selection,
                 std::size_t max_answers, bool proofs, bool json, const BudgetFlags& budget) {
        const Loaded p = load_program(prog, err_);
        SolveOptions so;
        so.selection = pick_selection(selection);
        so.budget = budget.budget();
        so.max_answers = max_answers;
        so.track_proofs = proofs;
        const Outcome o = solve(p.program, parse_query(query), so);
        if (json) {
            nlohmann::json j = to_json(o);
            if (proofs) {
                for (std::size_t i = 0; i < o.answers.size(); ++i) {
                    nlohmann::json pj = nlohmann::json::array();
                    for (const Term& t : o.answers[i].proofs) pj.push_back(to_text(t));
                    j["answers"][i]["proofs"] = pj;
                }
            }
            print_json(out_, j);
        } else {
            for (const auto& a : o.answers) {
                out_ << to_text(std::span<const Term>(a.atoms));
                if (!a.substitution.empty()) out_ << "    " << to_string(a.substitution);
                out_ << "\n";
                if (proofs)
                    for (const Term& t : a.proofs) out_ << "  proof: " << to_text(t) << "\n";
            }
            out_ << o.answers.size() << " answer(s), " << o.steps << " steps";
            if (o.stopped_early) out_ << ", stopped at --max-answers";
            if (o.floundered) out_ << ", floundered";
            if (o.budget_hit) out_ << ", budget exhausted";
            else if (o.exhaustive) out_ << ", tree exhausted";
            out_ << "\n";
        }
        if (!o.answers.empty()) return Ok;
        if (o.floundered || o.budget_hit) return Undecided;
        return Defect;
    }

    int do_sat(const std::string& path, const std::string& variant, bool compare, bool json, const BudgetFlags& budget) {
        const SatVariant v = parse_variant(variant);
        std::string text;
        if (path == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            text = read_file(path);
        }
        std::vector<std::string> warnings;
        const CnfFormula f = parse_dimacs(text, &warnings);
        for (const auto& w : warnings) err_ << "warning: " << w << "\n";
        const SatResult r = solve_sat(f, v, budget.budget());
        bool mismatch = false;
        std::optional<SatResult> oracle;
        if (compare) {
            oracle = brute_force_sat(f);
            mismatch = r.status != SatStatus::Indeterminate && r.status != oracle->status;
        }
        if (json) {
            nlohmann::json j = to_json(r);
            j["num_vars"] = f.num_vars;
            j["num_clauses"] = f.clauses.size();
            if (oracle) {
                j["oracle"] = to_string(oracle->status);
                j["agrees"] = !mismatch;
            }
            print_json(out_, j);
        } else {
            out_ << "c variant " << r.variant << ", " << r.steps << " steps\n" << to_dimacs_output(r);
            if (oracle) out_ << "c oracle " << to_string(oracle->status) << (mismatch ? " DISAGREES" : " agrees") << "\n";
        }
        if (mismatch) return Defect;
        if (r.status == SatStatus::Indeterminate) return Undecided;
        if (r.status == SatStatus::Sat && !evaluate(f, r.assignment)) {
            err_ << "error: reported assignment does not satisfy the formula\n";
            return Defect;
        }
        return Ok;
    }

    int do_check(const std::string& kind, const std::vector<std::string>& refs, const std::string& spec_name,
                 std::size_t bound, const std::string& mapping, std::size_t slack, std::size_t max_witnesses,
                 const SigFlags& sigf, bool json) {
        if (kind != "cssld" && refs.size() != 1) throw UsageError("check " + kind + " takes exactly one program");
        if (kind != "recurrence" && spec_name.empty()) throw UsageError("check " + kind + " needs --spec");
        std::vector<Loaded> progs;
        for (const auto& r : refs) progs.push_back(load_program(r, err_));
        std::optional<Specification> spec;
        if (!spec_name.empty()) spec = load_spec(spec_name);

        CheckOptions co;
        co.max_witnesses = max_witnesses;
        co.slack = slack;

        if (kind == "cssld") {
            std::vector<Program> ps;
            Signature sig;
            for (const auto& l : progs) {
                ps.push_back(l.program);
                sig.merge(sigf.make(l.program, &*spec));
            }
            CssldConditionReport r = check_cssld_condition(ps, *spec, sig, bound, co);
            for (std::size_t i = 0; i < r.per_program.size(); ++i) r.per_program[i].subject = progs[i].name;
            if (json) {
                print_json(out_, to_json(r));
            } else {
                for (const auto& rep : r.per_program) out_ << summary(rep);
                out_ << "csSLD condition at bound " << bound << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
            }
            return r.passed() ? Ok : Defect;
        }

        const Loaded& l = progs.front();
        co.subject = l.name;
        const Signature sig = sigf.make(l.program, spec ? &*spec : nullptr);
        CheckReport r;
        if (kind == "correctness") r = check_correctness(l.program, *spec, sig, bound, co);
        else if (kind == "coverage") r = check_coverage(l.program, *spec, sig, bound, co);
        else r = check_recurrent(l.program, pick_mapping(mapping, l.program), sig, bound, co);
        if (json) print_json(out_, to_json(r));
        else out_ << summary(r);
        return r.passed() ? Ok : Defect;
    }

    int do_diagnose(const std::string& kind, const std::string& prog, const std::string& target,
                    const std::string& spec_name, std::size_t bound, const SigFlags& sigf, const BudgetFlags& budget,
                    bool json) {
        const Loaded l = load_program(prog, err_);
        const Specification spec = load_spec(spec_name);
        const Signature sig = sigf.make(l.program, &spec);
        DiagnoseOptions opts;
        opts.budget = budget.budget(opts.budget);
        Diagnosis d;
        if (kind == "wrong-answer") {
            const std::vector<Term> atoms = parse_query(target);
            if (atoms.size() != 1) throw UsageError("wrong-answer takes a single atom");
            d = diagnose_incorrectness(l.program, spec, atoms.front(), sig, bound, opts);
        } else {
            d = diagnose_incompleteness(l.program, spec, parse_query(target), sig, bound, opts);
        }
        if (json) print_json(out_, to_json(d));
        else out_ << summary(d);
        if (d.kind != DiagnosisKind::NoDefectFound) return Defect;
        return d.reason.find("budget") != std::string::npos ? Undecided : Ok;
    }

    int do_tree(const std::string& prog, const std::string& query, const std::string& out_path,
                const std::string& selection, const std::vector<std::string>& with, const std::string& csr,
                const BudgetFlags& budget) {
        const Loaded l = load_program(prog, err_);
        const Selection sel = pick_selection(selection);
        DerivationTree t;
        if (with.empty()) {
            t = build_tree(l.program, parse_query(query), sel, budget.budget());
        } else {
            std::vector<Program> ps{l.program};
            for (const auto& w : with) ps.push_back(load_program(w, err_).program);
            t = cssld_solve(ps, pick_csr(csr), parse_query(query), sel, budget.budget());
        }
        const std::string doc = to_json(t).dump(2) + "\n";
        if (out_path == "-") {
            out_ << doc;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw UsageError("cannot write '" + out_path + "'");
            f << doc;
            out_ << t.nodes.size() << " nodes, " << t.success_order.size() << " success leaves written to " << out_path
                 << "\n";
        }
        return t.budget_hit ? Undecided : Ok;
    }

    int do_corpus_list(bool json) {
        if (json) {
            nlohmann::json j;
            for (const auto& [name, p] : builtin_corpus()) j["programs"][name] = p.rules().size();
            j["specifications"] = spec_names();
            print_json(out_, j);
            return Ok;
        }
        out_ << "programs:\n";
        for (const auto& [name, p] : builtin_corpus())
            out_ << "  corpus:" << name << "  (" << p.rules().size() << " rules"
                 << (p.blocks().empty() ? "" : ", block declarations") << (p.has_commit() ? ", commits" : "") << ")\n";
        out_ << "specifications:\n";
        for (const auto& n : spec_names()) out_ << "  " << n << "\n";
        return Ok;
    }

    int do_corpus_show(const std::string& name) {
        try {
            out_ << corpus_source(name);
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
        return Ok;
    }

    std::ostream& out_;
    std::ostream& err_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return Cli(out, err).run(args);
}

} // namespace logicbench::cli
