#include <algorithm>
#include <set>

#include "generators.hpp"
#include "support.hpp"

#include "logicbench/corpus.hpp"
#include "logicbench/diagnoser.hpp"
#include "logicbench/engine.hpp"
#include "logicbench/sat.hpp"
#include "logicbench/spec.hpp"
#include "logicbench/verifier.hpp"

using namespace lbt;

namespace {

// ---- terms ---------------------------------------------------------------

Term random_term(Rng& r, std::size_t depth) {
    static const char* vars[] = {"X", "Y", "Z"};
    const std::size_t pick = r.below(depth == 0 ? 5 : 8);
    if (pick < 3) return V(vars[pick]);
    if (pick == 3) return Term::constant("a");
    if (pick == 4) return Term::constant("b");
    if (pick < 7) return Term::compound("f", {random_term(r, depth - 1)});
    return Term::compound("g", {random_term(r, depth - 1), random_term(r, depth - 1)});
}

Term tuple_of(const std::vector<Variable>& vs) {
    std::vector<Term> args;
    for (const auto& v : vs) args.push_back(Term::variable(v));
    return Term::compound("$t", args);
}

} // namespace

TEST_CASE("mgu agrees with a brute-force search over ground unifiers") {
    Rng r(7);
    HerbrandUniverse u(Signature::parse("a/0, b/0, f/1, g/2"));
    const auto ground = u.up_to(3);
    std::size_t unified = 0, refuted = 0;
    for (int round = 0; round < 250; ++round) {
        const Term t1 = random_term(r, 2), t2 = random_term(r, 2);
        std::vector<Variable> vs = variables_of(Term::compound("$p", {t1, t2}));
        const Term vars = tuple_of(vs);
        auto s = unify(t1, t2);
        if (s) {
            ++unified;
            CHECK(apply(*s, t1) == apply(*s, t2));
            CHECK(s->is_idempotent());
        }
        // Every ground unifier with small images factors through the mgu.
        std::vector<std::size_t> pos(vs.size(), 0);
        bool any = false;
        for (;;) {
            Substitution g;
            for (std::size_t i = 0; i < vs.size(); ++i) g.bind(vs[i], ground[pos[i]]);
            if (apply(g, t1) == apply(g, t2)) {
                any = true;
                REQUIRE(s.has_value());
                CHECK(match(apply(*s, vars), apply(g, vars)).has_value());
            }
            std::size_t k = 0;
            while (k < pos.size() && ++pos[k] == ground.size()) pos[k++] = 0;
            if (k == pos.size()) break;
        }
        if (!s) {
            CHECK_FALSE(any);
            ++refuted;
        }
    }
    CHECK(unified > 20);
    CHECK(refuted > 20);
}

TEST_CASE("unification without the occurs check differs only on cyclic problems") {
    Rng r(11);
    for (int round = 0; round < 300; ++round) {
        const Term t1 = random_term(r, 2), t2 = random_term(r, 2);
        auto with = unify(t1, t2);
        auto without = unify(t1, t2, UnifyOptions{false});
        if (with) {
            REQUIRE(without.has_value());
            CHECK(apply(*with, t1) == apply(*without, t1));
        }
    }
}

TEST_CASE("herbrand enumeration is monotone in the bound") {
    const auto sig = truth_sig_a();
    std::size_t prev = 0;
    for (std::size_t b = 1; b <= 7; ++b) {
        const auto n = enumerate_herbrand(sig, b).size();
        CHECK(n >= prev);
        prev = n;
    }
}

// ---- programs ------------------------------------------------------------

TEST_CASE("every corpus program survives a print/parse round trip") {
    for (const auto& [name, p] : builtin_corpus()) {
        CAPTURE(std::string(name));
        CHECK(parse_program(to_text(p)) == p);
        CHECK(parse_program(to_text(commit_free_projection(p))) == commit_free_projection(p));
    }
}

// ---- engine --------------------------------------------------------------

namespace {

std::set<std::string> answer_set(const std::vector<std::vector<Term>>& answers) {
    std::set<std::string> out;
    for (const auto& a : answers) out.insert(canonical_form(Term::compound("$q", a)));
    return out;
}

std::set<std::string> answer_set(const Outcome& o) {
    std::vector<std::vector<Term>> as;
    for (const auto& a : o.answers) as.push_back(a.atoms);
    return answer_set(as);
}

// Every grounding of the answer up to `bound` lies in the model; the model is
// computed with some headroom since derivations may pass through larger atoms.
void check_answer_in_model(const std::vector<Term>& answer, const BottomUpResult& model, HerbrandUniverse& u,
                           std::size_t bound) {
    for (const Term& atom : answer) {
        std::vector<Term> one{atom};
        for_each_bounded_grounding(u, one, bound, [&](const Substitution& s) {
            const Term g = apply(s, atom);
            if (atom_size(g) <= bound) CHECK_MESSAGE(model.contains(g), to_text(g));
            return true;
        });
    }
}

} // namespace

TEST_CASE("answers are sound with respect to the bounded least model") {
    SUBCASE("P1") {
        const Program& p = corpus_program("P1");
        const auto sig = truth_sig_a();
        const auto model = bottom_up_model(p, sig, 8);
        REQUIRE(model.fixpoint);
        HerbrandUniverse u(sig);
        for (const char* q : {"sat_cnf([[X-Y]])", "sat_cl([true-X])", "sat_cl([X-true|T])", "sat_cl(L)",
                              "sat_cnf([[true-X], [X-true]])", "X = Y", "sat_cnf(L)"}) {
            CAPTURE(std::string(q));
            SolveOptions so;
            so.max_answers = 25;
            so.budget = {200, 100'000};
            const Outcome o = solve(p, Q(q), so);
            CHECK_FALSE(o.answers.empty());
            for (const auto& a : o.answers) check_answer_in_model(a.atoms, model, u, 7);
        }
    }
    SUBCASE("counterexample and appendix programs") {
        const std::vector<std::pair<const char*, std::vector<const char*>>> cases = {
            {"CSSLD_COUNTEREXAMPLE", {"q(X)", "p(Y, X)", "p(a, s(s(0)))"}},
            {"APPENDIX_EXAMPLE", {"q(X)", "p(X)", "p(s(s(0)))"}}};
        for (const auto& [name, queries] : cases) {
            CAPTURE(std::string(name));
            const Program& p = corpus_program(name);
            const auto sig = default_signature(p, nullptr, {"a"});
            const auto model = bottom_up_model(p, sig, 8);
            HerbrandUniverse u(sig);
            for (const char* q : queries) {
                SolveOptions so;
                so.max_answers = 10;
                so.budget = {200, 50'000};
                const Outcome o = solve(p, Q(q), so);
                for (const auto& a : o.answers) check_answer_in_model(a.atoms, model, u, 6);
            }
        }
    }
}

TEST_CASE("selection rule does not change the answer set of P1 intended queries") {
    Rng r(2024);
    const Program& p = corpus_program("P1");
    for (int i = 0; i < 40; ++i) {
        const std::vector<Term> q{random_p1_query(r, 3, 3)};
        CAPTURE(to_text(q.front()));
        const auto left = build_tree(p, q, Selection::Leftmost);
        const auto right = build_tree(p, q, Selection::Rightmost);
        REQUIRE(left.exhaustive);
        REQUIRE(right.exhaustive);
        CHECK(answer_set(left.answers()) == answer_set(right.answers()));
    }
}

TEST_CASE("commits never add answers") {
    Rng r(99);
    const Program& control = corpus_program("P3_CONTROL");
    const Program plain = commit_free_projection(control);
    for (int i = 0; i < 40; ++i) {
        const auto f = random_formula(r, 3, 3, 3);
        const auto enc = encode_cnf(f);
        const Outcome pruned = solve(control, {enc.query});
        const Outcome full = solve(plain, {enc.query});
        REQUIRE(pruned.exhaustive);
        REQUIRE(full.exhaustive);
        const auto all = answer_set(full);
        for (const auto& a : answer_set(pruned)) CHECK_MESSAGE(all.count(a) == 1, a);
        // Completeness is preserved too: both agree on satisfiability.
        CHECK(pruned.answers.empty() == full.answers.empty());
    }
}

TEST_CASE("csSLD trees are pruned subtrees of the union program's tree") {
    SUBCASE("P31/P32 inside P3") {
        Rng r(5);
        const Program& p3 = corpus_program("P3");
        for (int i = 0; i < 25; ++i) {
            const auto enc = encode_cnf(random_formula(r, 2, 2, 3));
            const auto full = build_tree(p3, {enc.query});
            for (const auto& csr : {ClauseSelectionRule::nonvar_driven(), ClauseSelectionRule::alternate(),
                                    ClauseSelectionRule::always(1), ClauseSelectionRule::always(2)}) {
                const auto pruned = cssld_solve(p31_p32(), csr, {enc.query});
                const auto mismatch = pruned_subtree_mismatch(pruned, full);
                CHECK_MESSAGE(!mismatch, csr.name << ": " << mismatch.value_or(""));
            }
        }
    }
    SUBCASE("counterexample programs") {
        const Program& p = corpus_program("CSSLD_COUNTEREXAMPLE");
        for (const char* q : {"q(s(s(0)))", "q(0)", "p(a, s(0))", "p(b, s(s(0)))"}) {
            const auto full = build_tree(p, Q(q));
            for (const auto& csr : {ClauseSelectionRule::alternate(), ClauseSelectionRule::always(1),
                                    ClauseSelectionRule::always(2)}) {
                const auto pruned = cssld_solve(cssld_counterexample_programs(), csr, Q(q));
                CHECK_FALSE(pruned_subtree_mismatch(pruned, full).has_value());
            }
        }
    }
}

// ---- specifications ------------------------------------------------------

namespace {

// Membership in the list languages, written directly from their definitions.
const Term* nth_tail(const Term& t, std::size_t n) {
    const Term* cur = &t;
    for (std::size_t i = 0; i < n; ++i) {
        if (!cur->is_cons()) return nullptr;
        cur = &cur->arg(1);
    }
    return cur;
}

bool equal_pair(const Term& e) { return e.is_pair() && e.arg(0) == e.arg(1); }

bool ref_L1(const Term& t) {
    for (std::size_t n = 0;; ++n) {
        const Term* c = nth_tail(t, n);
        if (!c || !c->is_cons()) return false;
        if (equal_pair(c->arg(0))) return true;
    }
}

bool ref_L1_0(const Term& t) {
    if (!is_proper_list(t) || t.is_nil()) return false;
    bool some = false;
    for (const Term& e : list_elements(t)) {
        if (!e.is_pair()) return false;
        some = some || equal_pair(e);
    }
    return some;
}

bool ref_L2(const Term& t, bool zero) {
    if (!is_proper_list(t)) return false;
    for (const Term& e : list_elements(t))
        if (!(zero ? ref_L1_0(e) : ref_L1(e))) return false;
    return true;
}

bool truth(const Term& t) { return t == Term::constant("true") || t == Term::constant("false"); }

bool truth_list(const Term& t) {
    if (!is_proper_list(t)) return false;
    const auto items = list_elements(t);
    return std::all_of(items.begin(), items.end(), [](const Term& e) { return truth(e); });
}

bool is(const Term& a, const char* name, std::size_t n) { return a.has_functor(Symbol(name), n); }

// level: 1 = S1, 2 = S2, 3 = S3.
bool ref_contains(int level, bool zero, const Term& a) {
    auto l1 = [&](const Term& t) { return zero ? ref_L1_0(t) : ref_L1(t); };
    if (is(a, "=", 2)) return a.arg(0) == a.arg(1);
    if (is(a, "sat_cnf", 1)) return ref_L2(a.arg(0), zero);
    if (is(a, "sat_cl", 1)) return l1(a.arg(0));
    if (level >= 2 && is(a, "sat_cl3", 3))
        return l1(Term::cons(Term::pair(a.arg(2), a.arg(1)), a.arg(0)));
    if (level >= 2 && (is(a, "sat_cl5", 5) || is(a, "sat_cl5a", 5)))
        return l1(Term::cons(Term::pair(a.arg(1), a.arg(0)), Term::cons(Term::pair(a.arg(3), a.arg(2)), a.arg(4))));
    if (level >= 3 && is(a, "sat", 2)) return ref_L2(a.arg(0), zero) && truth_list(a.arg(1));
    if (level >= 3 && is(a, "tflist", 1)) return truth_list(a.arg(0));
    if (level >= 3 && is(a, "tf", 1)) return truth(a.arg(0));
    return false;
}

std::vector<Term> all_atoms(HerbrandUniverse& u, std::size_t bound) {
    std::vector<Term> out;
    const std::vector<std::pair<const char*, std::size_t>> preds = {
        {"=", 2}, {"sat_cnf", 1}, {"sat_cl", 1}, {"sat_cl3", 3}, {"sat_cl5", 5},
        {"sat_cl5a", 5}, {"sat", 2}, {"tflist", 1}, {"tf", 1}};
    for (const auto& [name, n] : preds) {
        std::vector<Term> args;
        for (std::size_t i = 0; i < n; ++i) args.push_back(V("A" + std::to_string(i)));
        const std::vector<Term> open{Term::compound(name, args)};
        for_each_bounded_grounding(u, open, bound, [&](const Substitution& s) {
            out.push_back(apply(s, open.front()));
            return true;
        });
    }
    return out;
}

} // namespace

TEST_CASE("zero languages are included in the full ones") {
    for (const Term& t : enumerate_herbrand(truth_sig_a(), 9)) {
        if (in_L1_0(t)) CHECK(in_L1(t));
        if (in_L2_0(t)) CHECK(in_L2(t));
        CHECK(in_L1(t) == ref_L1(t));
        CHECK(in_L1_0(t) == ref_L1_0(t));
        CHECK(in_L2(t) == ref_L2(t, false));
        CHECK(in_L2_0(t) == ref_L2(t, true));
    }
}

TEST_CASE("membership matches the reference checker on every atom up to size 7") {
    HerbrandUniverse u(truth_sig_a());
    const auto atoms = all_atoms(u, 7);
    REQUIRE(atoms.size() > 10'000);
    const auto s1 = spec_S1(), s2 = spec_S2(), s20 = spec_S2_0(), s3 = spec_S3(), s30 = spec_S3_0();
    std::size_t mismatches = 0, s2_only = 0;
    for (const Term& a : atoms) {
        const bool in1 = s1.contains(a), in2 = s2.contains(a), in20 = s20.contains(a);
        const bool in3 = s3.contains(a), in30 = s30.contains(a);
        mismatches += in1 != ref_contains(1, false, a);
        mismatches += in2 != ref_contains(2, false, a);
        mismatches += in20 != ref_contains(2, true, a);
        mismatches += in3 != ref_contains(3, false, a);
        mismatches += in30 != ref_contains(3, true, a);
        if (in20) CHECK(in2);
        if (in30) CHECK(in3);
        s2_only += in2 && !in20;
    }
    CHECK(mismatches == 0);
    CHECK(s2_only > 0);
}

// ---- verifier ------------------------------------------------------------

TEST_CASE("bounded model is sandwiched by S1") {
    const auto sig = truth_sig_a();
    const Program& p = corpus_program("P1");
    const auto s1 = spec_S1();
    for (std::size_t bound : {5u, 6u, 7u}) {
        const auto model = bottom_up_model(p, sig, bound);
        REQUIRE(model.fixpoint);
        for (const Term& a : model.atoms) CHECK(s1.contains(a));
        for (const Term& a : s1.enumerate(sig, bound - 2)) CHECK_MESSAGE(model.contains(a), to_text(a));
    }
}

TEST_CASE("level agrees with a reference evaluator on random ground atoms") {
    std::function<std::uint64_t(const Term&)> norm = [&](const Term& t) -> std::uint64_t {
        if (t.is_cons()) return norm(t.arg(0)) + norm(t.arg(1));
        return 1;
    };
    std::function<std::uint64_t(const Term&)> lsize = [&](const Term& t) -> std::uint64_t {
        return t.is_cons() ? 1 + lsize(t.arg(1)) : 0;
    };
    auto ref_p3 = [&](const Term& a) -> std::uint64_t {
        if (is(a, "sat", 2)) return std::max(3 * norm(a.arg(0)), lsize(a.arg(1))) + 2;
        if (is(a, "sat_cnf", 1) || is(a, "sat_cl", 1) || is(a, "sat_cl3", 3)) return 3 * norm(a.arg(0)) + 1;
        if (is(a, "sat_cl5", 5)) return 3 * norm(a.arg(4)) + 3;
        if (is(a, "sat_cl5a", 5)) return 3 * norm(a.arg(4)) + 2;
        if (is(a, "tflist", 1)) return lsize(a.arg(0));
        return 0;
    };
    HerbrandUniverse u(truth_sig_a());
    const auto pool = u.up_to(7);
    Rng r(31337);
    const std::vector<std::pair<const char*, std::size_t>> preds = {
        {"sat", 2}, {"sat_cnf", 1}, {"sat_cl", 1}, {"sat_cl3", 3}, {"sat_cl5", 5},
        {"sat_cl5a", 5}, {"tflist", 1}, {"tf", 1}, {"=", 2}};
    const auto p1 = LevelMapping::p1(), p3 = LevelMapping::p3();
    for (int i = 0; i < 100; ++i) {
        const auto& [name, n] = preds[r.below(preds.size())];
        std::vector<Term> args;
        for (std::size_t k = 0; k < n; ++k) args.push_back(pool[r.below(pool.size())]);
        const Term a = Term::compound(name, args);
        CAPTURE(to_text(a));
        CHECK(level(p3, a) == ref_p3(a));
        if (is(a, "sat_cnf", 1) || is(a, "sat_cl", 1)) CHECK(level(p1, a) == norm(a.arg(0)));
        if (is(a, "=", 2)) CHECK(level(p1, a) == 0);
        CHECK(term_level(args.front()) == norm(args.front()));
    }
}

TEST_CASE("correctness verdicts are monotone in the bound") {
    const auto sig = truth_sig_a();
    for (const char* name : {"P1", "P1_BUGGY", "P3"}) {
        bool failed_below = false;
        for (std::size_t b = 2; b <= 6; ++b) {
            const auto r = check_correctness(corpus_program(name), name[1] == '1' ? spec_S1() : spec_S3(), sig, b);
            if (failed_below) CHECK_FALSE(r.passed());
            failed_below = failed_below || !r.passed();
            if (!r.passed()) CHECK_FALSE(r.witnesses.empty());
        }
    }
}

TEST_CASE("bounded intended queries of recurrent programs have finite trees") {
    const auto sig = truth_sig_a();
    REQUIRE(check_recurrent(corpus_program("P1"), LevelMapping::p1(), sig, 6).passed());
    REQUIRE(check_recurrent(corpus_program("P3"), LevelMapping::p3(), sig, 5).passed());
    Rng r(404);
    for (int i = 0; i < 20; ++i) {
        const std::vector<Term> q1{random_p1_query(r, 3, 3)};
        REQUIRE(check_bounded_query(q1, LevelMapping::p1()).bounded);
        CHECK(build_tree(corpus_program("P1"), q1, Selection::Rightmost).exhaustive);
        const auto enc = encode_cnf(random_formula(r, 3, 3, 3));
        REQUIRE(check_bounded_query({enc.query}, LevelMapping::p3()).bounded);
        CHECK(build_tree(corpus_program("P3"), {enc.query}, Selection::Rightmost).exhaustive);
        CHECK(build_tree(corpus_program("P3"), {enc.query}, Selection::Leftmost).exhaustive);
    }
}

// ---- diagnoser -----------------------------------------------------------

TEST_CASE("diagnoses are confirmed by the bounded checks") {
    const auto sig = truth_sig_a();
    const auto s1 = spec_S1();
    const Program& p1 = corpus_program("P1");
    SUBCASE("incorrect instances") {
        const Program extra_fact = p1.with_rule(Rule{T("sat_cl([])"), {}, "", {}});
        for (const auto& [prog, symptom] : std::vector<std::pair<Program, const char*>>{
                 {corpus_program("P1_BUGGY"), "sat_cl([a|true-true])"},
                 {extra_fact, "sat_cnf([[]])"},
                 {extra_fact, "sat_cl([])"}}) {
            const auto d = diagnose_incorrectness(prog, s1, T(symptom), sig, 6);
            REQUIRE(d.kind == DiagnosisKind::IncorrectInstance);
            CHECK_FALSE(s1.contains(d.instance->head));
            for (const Term& b : d.instance->body) CHECK(s1.contains(b));
            CheckOptions co;
            co.max_witnesses = static_cast<std::size_t>(-1);
            const auto r = check_correctness(prog, s1, sig, atom_size(d.instance->head), co);
            const bool confirmed = std::any_of(r.witnesses.begin(), r.witnesses.end(), [&](const Witness& w) {
                return w.instance && *w.instance == *d.instance;
            });
            CHECK_MESSAGE(confirmed, to_text(*d.instance));
        }
    }
    SUBCASE("uncovered atoms") {
        for (const auto& label : {"sat_cnf/1#1", "sat_cl/1#1", "=/2#1"}) {
            const Program broken = p1.without(label);
            for (const char* q : {"sat_cnf([])", "sat_cnf([[true-X]])", "sat_cl([false-false])"}) {
                const auto d = diagnose_incompleteness(broken, s1, Q(q), sig, 6);
                if (d.kind != DiagnosisKind::UncoveredAtom) continue;
                CheckOptions co;
                co.max_witnesses = static_cast<std::size_t>(-1);
                const auto r = check_coverage(broken, s1, sig, atom_size(*d.atom), co);
                const bool confirmed = std::any_of(r.witnesses.begin(), r.witnesses.end(),
                                                   [&](const Witness& w) { return w.atom && *w.atom == *d.atom; });
                CHECK_MESSAGE(confirmed, label << " " << q << " -> " << to_text(*d.atom));
            }
        }
    }
}

// ---- sat workbench -------------------------------------------------------

namespace {

void agree_with_oracle(const CnfFormula& f, std::size_t& mismatches) {
    const auto oracle = brute_force_sat(f);
    for (SatVariant v : all_variants()) {
        const auto res = solve_sat(f, v);
        if (res.status != oracle.status) {
            ++mismatches;
            MESSAGE(to_string(v) << " disagrees on " << to_dimacs(f));
        }
        if (v != SatVariant::P1) CHECK_FALSE(res.floundered);
        if (res.status == SatStatus::Sat) {
            CHECK(formula_holds(f, res.assignment));
            if (v != SatVariant::P1) CHECK(res.assignment.size() == f.num_vars);
        }
    }
}

} // namespace

TEST_CASE("every variant agrees with the truth table on all 4-variable formulas of up to 3 clauses") {
    const auto clauses = all_clauses(4, 3, false);
    std::size_t mismatches = 0;
    const auto n = for_each_formula(4, clauses, 3, [&](const CnfFormula& f) { agree_with_oracle(f, mismatches); });
    CHECK(n == 47905);
    CHECK(mismatches == 0);
}

TEST_CASE("every variant agrees with the truth table on sampled 4-clause formulas") {
    Rng r(4444);
    const auto clauses = all_clauses(4, 3, true);
    std::size_t mismatches = 0;
    for (int i = 0; i < 4000; ++i) {
        CnfFormula f;
        f.num_vars = 4;
        for (int k = 0; k < 4; ++k) f.clauses.push_back(clauses[r.below(clauses.size())]);
        agree_with_oracle(f, mismatches);
    }
    CHECK(mismatches == 0);
}

TEST_CASE("blocked P2 flounders on a raw query while the P3 variants do not") {
    const Outcome o = solve(corpus_program("P2_BLOCK"), Q("sat_cnf([[true-X,false-Y]])"));
    CHECK(o.floundered);
    CHECK(o.answers.empty());
    for (SatVariant v : {SatVariant::P3, SatVariant::P3Control, SatVariant::CssldP31P32})
        CHECK_FALSE(solve_sat(CnfFormula{2, {{1, -2}}}, v).floundered);
}
