#include "logicbench/corpus.hpp"

#include <stdexcept>

namespace logicbench {

namespace {

const char* const kP1 = R"(% CNF satisfiability, first version
sat_cnf([]).
sat_cnf([Clause|Clauses]) :- sat_cl(Clause), sat_cnf(Clauses).
sat_cl([Pol-Var|Pairs]) :- Pol = Var.
sat_cl([H|Pairs]) :- sat_cl(Pairs).
X = X.
)";

const char* const kP1Buggy = R"(sat_cnf([]).
sat_cnf([Clause|Clauses]) :- sat_cl(Clause), sat_cnf(Clauses).
sat_cl([Pol-Var|Pairs]) :- Pol = Var.
sat_cl([H|Pairs]) :- sat_cl([Pairs]).
X = X.
)";

const char* const kP2Core = R"(sat_cnf([]).
sat_cnf([Clause|Clauses]) :- sat_cl(Clause), sat_cnf(Clauses).
sat_cl([Pol-Var|Pairs]) :- sat_cl3(Pairs, Var, Pol).
sat_cl3([], Var, Pol) :- Var = Pol.
sat_cl3([Pol2-Var2|Pairs], Var1, Pol1) :- sat_cl5(Var1, Pol1, Var2, Pol2, Pairs).
sat_cl5(Var1, Pol1, Var2, Pol2, Pairs) :- sat_cl5a(Var1, Pol1, Var2, Pol2, Pairs).
sat_cl5(Var1, Pol1, Var2, Pol2, Pairs) :- sat_cl5a(Var2, Pol2, Var1, Pol1, Pairs).
sat_cl5a(Var1, Pol1, Var2, Pol2, Pairs) :- Var1 = Pol1.
sat_cl5a(Var1, Pol1, Var2, Pol2, Pairs) :- sat_cl3(Pairs, Var2, Pol2).
X = X.
)";

const char* const kSatTop = R"(sat(Clauses, Vars) :- sat_cnf(Clauses), tflist(Vars).
tflist([]).
tflist([Var|Vars]) :- tflist(Vars), tf(Var).
tf(true).
tf(false).
)";

const char* const kBlock = ":- block sat_cl5(-, ?, -, ?, ?).\n";

const char* const kP3Control = R"(:- block sat_cl5(-, ?, -, ?, ?).
sat(Clauses, Vars) :- sat_cnf(Clauses), tflist(Vars).
sat_cnf([]).
sat_cnf([Clause|Clauses]) :- sat_cl(Clause), sat_cnf(Clauses).
sat_cl([Pol-Var|Pairs]) :- sat_cl3(Pairs, Var, Pol).
sat_cl3([], Var, Pol) :- Var = Pol.
sat_cl3([Pol2-Var2|Pairs], Var1, Pol1) :- sat_cl5(Var1, Pol1, Var2, Pol2, Pairs).
sat_cl5(Var1, Pol1, Var2, Pol2, Pairs) :-
    ( nonvar(Var1) -> sat_cl5a(Var1, Pol1, Var2, Pol2, Pairs)
    ; sat_cl5a(Var2, Pol2, Var1, Pol1, Pairs) ).
sat_cl5a(Var1, Pol1, Var2, Pol2, Pairs) :-
    ( Var1 = Pol1 -> true
    ; sat_cl3(Pairs, Var2, Pol2) ).
tflist([]).
tflist([Var|Vars]) :- tflist(Vars), tf(Var).
tf(true).
tf(false).
X = X.
)";

const char* const kCounterexample = R"(q(X) :- p(Y, X).
p(Y, 0).
p(a, s(X)) :- p(a, X).
p(b, s(X)) :- p(b, X).
)";

const char* const kAppendix = R"(p(s(X)) :- p(X).
p(0).
q(X) :- p(Y).
)";

struct Store {
    std::map<std::string, std::string> sources;
    std::map<std::string, Program> programs;
};

const Store& store() {
    static const Store s = [] {
        Store st;
        const std::string p2 = kP2Core;
        const std::string p3 = p2 + kSatTop;
        st.sources["P1"] = kP1;
        st.sources["P1_BUGGY"] = kP1Buggy;
        st.sources["P2"] = p2;
        st.sources["P2_BLOCK"] = std::string(kBlock) + p2;
        st.sources["P3"] = p3;
        st.sources["P3_CONTROL"] = kP3Control;
        st.sources["CSSLD_COUNTEREXAMPLE"] = kCounterexample;
        st.sources["APPENDIX_EXAMPLE"] = kAppendix;
        for (const auto& [name, text] : st.sources) st.programs.emplace(name, parse_program(text));
        // Labels survive removal, so P31/P32 name the same rules as P3 does.
        const Program& full = st.programs.at("P3");
        st.programs.emplace("P31", full.without("sat_cl5/5#1"));
        st.programs.emplace("P32", full.without("sat_cl5/5#2"));
        st.sources["P31"] = to_text(st.programs.at("P31"));
        st.sources["P32"] = to_text(st.programs.at("P32"));
        return st;
    }();
    return s;
}

} // namespace

const std::map<std::string, Program>& builtin_corpus() { return store().programs; }

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : store().programs) out.push_back(name);
    return out;
}

const Program& corpus_program(std::string_view name) {
    auto it = store().programs.find(std::string(name));
    if (it == store().programs.end()) {
        std::string known;
        for (const auto& n : corpus_names()) known += (known.empty() ? "" : ", ") + n;
        throw std::out_of_range("unknown corpus program '" + std::string(name) + "' (known: " + known + ")");
    }
    return it->second;
}

const std::string& corpus_source(std::string_view name) {
    corpus_program(name);
    return store().sources.at(std::string(name));
}

std::vector<Program> cssld_counterexample_programs() {
    const Program& p = corpus_program("CSSLD_COUNTEREXAMPLE");
    return {p.without("p/2#3"), p.without("p/2#2")};
}

std::vector<Program> p31_p32() { return {corpus_program("P31"), corpus_program("P32")}; }

} // namespace logicbench
