#include <algorithm>

#include "support.hpp"

#include "logicbench/corpus.hpp"
#include "logicbench/verifier.hpp"

using namespace lbt;

namespace {

bool has_instance(const CheckReport& r, const std::string& text) {
    return std::any_of(r.witnesses.begin(), r.witnesses.end(),
                       [&](const Witness& w) { return w.instance && to_text(*w.instance) == text; });
}

bool has_atom(const CheckReport& r, const Term& a) {
    return std::any_of(r.witnesses.begin(), r.witnesses.end(), [&](const Witness& w) { return w.atom && *w.atom == a; });
}

CheckOptions all_witnesses() {
    CheckOptions o;
    o.max_witnesses = 1'000'000;
    return o;
}

Specification numerals_only() {
    return Specification("NUMERALS", {{Predicate{Symbol("p"), 1}, [](const Term& a) {
                                           const Term* t = &a.arg(0);
                                           while (t->has_functor(Symbol("s"), 1)) t = &t->arg(0);
                                           return t->has_functor(Symbol("0"), 0);
                                       }}});
}

} // namespace

TEST_CASE("correctness of P1") {
    const CheckReport r = check_correctness(corpus_program("P1"), spec_S1(), truth_sig_a(), 6);
    CHECK(r.passed());
    CHECK(r.instances_checked > 0);
    CHECK(r.bound == 6);
}

TEST_CASE("correctness fails for the [Pairs] mutant") {
    const CheckReport r = check_correctness(corpus_program("P1_BUGGY"), spec_S1(), truth_sig_a(), 6, all_witnesses());
    CHECK_FALSE(r.passed());
    CHECK(has_instance(r, "sat_cl([a|true-true]) :- sat_cl([true-true])."));
    for (const auto& w : r.witnesses) CHECK(w.instance->rule_label == "sat_cl/1#2");
    CHECK(r.witness_count == r.witnesses.size());
}

TEST_CASE("correctness w.r.t. S1' fails on the recursive sat_cnf rule") {
    const CheckReport r = check_correctness(corpus_program("P1"), spec_S1_prime(), truth_sig_a(), 6, all_witnesses());
    CHECK_FALSE(r.passed());
    for (const auto& w : r.witnesses) CHECK(w.instance->rule_label == "sat_cnf/1#2");
}

TEST_CASE("correctness: monotone in the bound") {
    const Program& bug = corpus_program("P1_BUGGY");
    std::optional<std::size_t> first_fail;
    for (std::size_t b = 1; b <= 6; ++b) {
        const bool ok = check_correctness(bug, spec_S1(), truth_sig_a(), b).passed();
        if (!ok && !first_fail) first_fail = b;
        if (first_fail) CHECK_FALSE(ok);
    }
    CHECK(first_fail);
}

TEST_CASE("coverage") {
    CHECK(check_coverage(corpus_program("P1"), spec_S1(), truth_sig_a(), 6).passed());
    for (const char* p : {"P3", "P31", "P32"}) {
        CAPTURE(p);
        CHECK(check_coverage(corpus_program(p), spec_S3_0(), truth_sig_a(), 6).passed());
    }
}

TEST_CASE("coverage of P3 under S2 fails; [a,true-true] appears once it fits the bound") {
    const CheckReport six = check_coverage(corpus_program("P3"), spec_S2(), truth_sig_a(), 6, all_witnesses());
    CHECK_FALSE(six.passed());
    for (const auto& w : six.witnesses) {
        REQUIRE(w.atom);
        CHECK(spec_S2().contains(*w.atom));
        CHECK_FALSE(spec_S2_0().contains(*w.atom));
    }
    const CheckReport seven = check_coverage(corpus_program("P3"), spec_S2(), truth_sig_a(), 7, all_witnesses());
    CHECK(has_atom(seven, T("sat_cl([a,true-true])")));
    CHECK_FALSE(has_atom(six, T("sat_cl([a,true-true])")));  // 7 nodes: beyond bound 6
}

TEST_CASE("coverage: p(0) is not covered by the successor rule alone") {
    const CheckReport r = check_coverage(parse_program("p(s(X)) :- p(X)."), numerals_only(), Signature::parse("0/0, s/1"), 4);
    CHECK_FALSE(r.passed());
    CHECK(has_atom(r, T("p(0)")));
    CHECK(r.witness_count == 1);
}

TEST_CASE("level mappings") {
    CHECK(term_level(T("[true-true]")) == 2);
    CHECK(level(LevelMapping::p1(), T("sat_cnf([[true-true],[false-false]])")) == 5);
    CHECK(level(LevelMapping::p3(), T("tf(true)")) == 0);
    // Spot values for sat_cl([P-V|t]) :- sat_cl3(t, V, P) with t = [a, b-c].
    const Term t = T("[a, b-c]");
    const std::uint64_t tl = term_level(t);
    CHECK(level(LevelMapping::p3(), Term::compound("sat_cl", {Term::cons(T("true-true"), t)})) == 3 * tl + 4);
    CHECK(level(LevelMapping::p3(), Term::compound("sat_cl3", {t, T("true"), T("true")})) == 3 * tl + 1);
    CHECK_THROWS_AS(level(LevelMapping::p1(), T("sat_cl(X)")), std::invalid_argument);
    CHECK_THROWS_AS(level(LevelMapping::p1(), T("tf(true)")), std::invalid_argument);
    CHECK(list_norm(T("[a|X]")) == std::nullopt);
    CHECK(list_size(T("[X, Y]")) == 2u);
    CHECK(list_size(T("[a|X]")) == std::nullopt);
}

TEST_CASE("recurrence") {
    CHECK(check_recurrent(corpus_program("P1"), LevelMapping::p1(), truth_sig_a(), 6).passed());
    CHECK(check_recurrent(corpus_program("P3"), LevelMapping::p3(), truth_sig_a(), 6).passed());
    const auto lm = LevelMapping::weighted("size", {{Predicate{Symbol("p"), 1}, {0, {{0, 1, TermNorm::NodeCount}}}}});
    const CheckReport loop = check_recurrent(parse_program("p(X) :- p(X)."), lm, Signature::parse("a/0"), 3);
    CHECK_FALSE(loop.passed());
    CHECK(check_recurrent(parse_program("p(s(X)) :- p(X)."), lm, Signature::parse("0/0, s/1"), 5).passed());
}

TEST_CASE("bounded queries") {
    const BoundedResult r = check_bounded_query(Q("sat_cnf([[true-X,false-Y],[false-X]])"), LevelMapping::p1());
    CHECK(r.bounded);
    CHECK(r.level == 6);
    CHECK(check_bounded_query(Q("sat([[true-X,false-Y],[false-X]], [X,Y])"), LevelMapping::p3()).bounded);
    const auto lm = LevelMapping::weighted("size", {{Predicate{Symbol("p"), 1}, {0, {{0, 1, TermNorm::NodeCount}}}}});
    CHECK_FALSE(check_bounded_query(Q("p(X)"), lm).bounded);
    CHECK_FALSE(check_bounded_query(Q("sat_cl(L)"), LevelMapping::p1()).bounded);
}

TEST_CASE("csSLD condition") {
    const auto ok = check_cssld_condition(p31_p32(), spec_S3_0(), truth_sig_a(), 6);
    CHECK(ok.passed());
    CHECK(ok.per_program.size() == 2);

    const Signature sig = Signature::parse("0/0, s/1, a/0, b/0");
    CheckOptions all = all_witnesses();
    const auto bad = check_cssld_condition(cssld_counterexample_programs(), spec_cssld_counterexample(), sig, 3, all);
    CHECK_FALSE(bad.passed());
    REQUIRE(bad.per_program.size() == 2);
    CHECK_FALSE(bad.per_program[0].passed());
    CHECK_FALSE(bad.per_program[1].passed());
    CHECK(has_atom(bad.per_program[0], T("p(b, s(0))")));
    CHECK(has_atom(bad.per_program[1], T("p(a, s(0))")));

    const auto single = check_cssld_condition({corpus_program("P1")}, spec_S1(), truth_sig_a(), 5);
    CHECK(single.passed());
}

TEST_CASE("bottom-up model") {
    const BottomUpResult m = bottom_up_model(corpus_program("P1"), truth_sig(), 6);
    CHECK(m.fixpoint);
    CHECK(m.contains(T("sat_cnf([])")));
    CHECK(m.contains(T("sat_cl([true-true])")));
    CHECK_FALSE(m.contains(T("sat_cl([true-false])")));
    for (const auto& a : m.atoms) CHECK(atom_size(a) <= 6);

    const BottomUpResult empty = bottom_up_model(Program{}, Signature::parse("a/0"), 3);
    CHECK(empty.atoms.empty());
    CHECK(empty.fixpoint);

    const BottomUpResult one = bottom_up_model(parse_program("p(a)."), Signature::parse("a/0"), 3);
    CHECK(one.atoms == std::set<Term>{T("p(a)")});
    CHECK(one.iterations == 1);
}

TEST_CASE("ground completeness probe") {
    CHECK(ground_completeness_probe(corpus_program("P1"), spec_S1(), truth_sig_a(), 5).passed());
    const CheckReport missing =
        ground_completeness_probe(corpus_program("P1").without("sat_cnf/1#1"), spec_S1(), truth_sig_a(), 5);
    CHECK_FALSE(missing.passed());
    CHECK(has_atom(missing, T("sat_cnf([])")));
    CHECK(ground_completeness_probe(corpus_program("APPENDIX_EXAMPLE"), spec_appendix_example(),
                                    Signature::parse("0/0, s/1"), 5)
              .passed());
}

TEST_CASE("reports") {
    const CheckReport r = check_correctness(corpus_program("P1_BUGGY"), spec_S1(), truth_sig_a(), 6);
    const auto j = to_json(r);
    CHECK(j["verdict"] == "FAIL");
    CHECK(j["bound"] == 6);
    CHECK(j["witnesses"].size() == r.witnesses.size());
    CHECK(summary(r).find("at bound 6") != std::string::npos);
    CHECK(r.witnesses.size() <= CheckOptions{}.max_witnesses);
    const Specification s1 = spec_S1();
    const Signature d = default_signature(corpus_program("P1"), &s1, {"a"});
    CHECK(d.contains(Functor{Symbol("a"), 0}));
    CHECK(d.contains(Functor{Symbol("false"), 0}));
}
