#include <set>

#include "support.hpp"

using namespace lbt;

TEST_CASE("ground and list shape") {
    CHECK(T("f(a, [b])").is_ground());
    CHECK_FALSE(T("f(a, X)").is_ground());
    CHECK(is_proper_list(T("[]")));
    CHECK(is_proper_list(T("[a]")));
    CHECK(is_proper_list(T("[a,a]")));
    CHECK_FALSE(is_proper_list(T("[a,a|X]")));
    CHECK_FALSE(is_proper_list(T("[a,a|a]")));
    CHECK(texts(list_elements(T("[a,b-c]"))) == std::vector<std::string>{"a", "b-c"});
    CHECK(list_elements(T("[a|b]")).empty());
}

TEST_CASE("size counts every node") {
    CHECK(T("a").size() == 1);
    CHECK(T("X").size() == 1);
    CHECK(T("[true-true]").size() == 5);
    CHECK(atom_size(T("sat_cl([true-true])")) == 5);
    CHECK(atom_size(T("p")) == 0);
}

TEST_CASE("unify examples") {
    auto s = unify(V("X"), T("a"));
    REQUIRE(s);
    CHECK(*s == Substitution{{Variable{Symbol("X")}, T("a")}});

    auto m = unify(T("true-X"), T("Pol-Var"));
    REQUIRE(m);
    CHECK(m->size() == 2);
    CHECK(apply(*m, T("Pol")) == T("true"));
    CHECK(apply(*m, T("true-X")) == apply(*m, T("Pol-Var")));
    CHECK(is_variant(apply(*m, T("f(X,Var)")), T("f(Z,Z)")));

    CHECK_FALSE(unify(V("X"), T("s(X)")));
    CHECK(unify(V("X"), T("s(X)"), UnifyOptions{false}));  // cyclic binding accepted without the check
    CHECK_FALSE(unify(T("f(a)"), T("g(a)")));
    CHECK_FALSE(unify(T("f(a,b)"), T("f(X,X)")));
}

TEST_CASE("mgu is idempotent") {
    auto s = unify(T("f(X, g(Y), Y)"), T("f(g(Z), X, a)"));
    REQUIRE(s);
    CHECK(s->is_idempotent());
    const Term t = T("h(X, Y, Z)");
    CHECK(apply(*s, apply(*s, t)) == apply(*s, t));
    CHECK(apply(*s, t) == T("h(g(a), a, a)"));
}

TEST_CASE("apply examples") {
    const Substitution xa{{Variable{Symbol("X")}, T("a")}};
    CHECK(apply(xa, T("f(X,Y)")) == T("f(a,Y)"));
    CHECK(apply(Substitution{}, T("f(X,Y)")) == T("f(X,Y)"));
    const Substitution xt{{Variable{Symbol("X")}, T("true")}};
    CHECK(apply(xt, T("[true-X|T]")) == T("[true-true|T]"));
}

TEST_CASE("compose examples") {
    const Variable X{Symbol("X")}, Y{Symbol("Y")};
    const Substitution xy{{X, V("Y")}}, ya{{Y, T("a")}};
    CHECK(compose(xy, ya) == Substitution{{X, T("a")}, {Y, T("a")}});
    CHECK(compose(xy, {}) == xy);
    CHECK(compose({}, xy) == xy);
    const Term t = T("f(X, Y, Z)");
    CHECK(apply(compose(xy, ya), t) == apply(ya, apply(xy, t)));
}

TEST_CASE("match and subsumption") {
    CHECK(match(T("f(X, Y)"), T("f(a, g(b))")));
    CHECK_FALSE(match(T("f(X, X)"), T("f(a, b)")));
    CHECK(subsumes(T("p(X)"), T("p(f(Y))")));
    CHECK_FALSE(subsumes(T("p(f(Y))"), T("p(X)")));
    CHECK(is_variant(T("p(X, Y, X)"), T("p(A, B, A)")));
    CHECK_FALSE(is_variant(T("p(X, Y)"), T("p(A, A)")));
}

TEST_CASE("renaming moves variables to a new generation") {
    const Term r = rename(T("f(X, g(Y))"), 7);
    const auto vs = variables_of(r);
    REQUIRE(vs.size() == 2);
    CHECK(vs[0].version == 7);
    CHECK(vs[1].version == 7);
    CHECK(is_variant(r, T("f(X, g(Y))")));
}

TEST_CASE("enumerate_herbrand examples") {
    CHECK(texts(enumerate_herbrand(Signature::parse("a/0"), 1)) == std::vector<std::string>{"a"});
    CHECK(texts(enumerate_herbrand(Signature::parse("a/0, s/1"), 3)) ==
          std::vector<std::string>{"a", "s(a)", "s(s(a))"});
    CHECK(texts(enumerate_herbrand(Signature::parse("0/0, -/2"), 3)) == std::vector<std::string>{"0", "0-0"});
    CHECK_THROWS_AS(HerbrandUniverse(Signature::parse("s/1")), std::invalid_argument);
}

namespace {

// Independent count of ground terms with exactly n nodes.
std::size_t count_exact(const std::vector<std::size_t>& arities, std::size_t n);

std::size_t count_seq(const std::vector<std::size_t>& arities, std::size_t k, std::size_t n) {
    if (k == 0) return n == 0 ? 1 : 0;
    std::size_t total = 0;
    for (std::size_t first = 1; first <= n; ++first)
        total += count_exact(arities, first) * count_seq(arities, k - 1, n - first);
    return total;
}

std::size_t count_exact(const std::vector<std::size_t>& arities, std::size_t n) {
    if (n == 0) return 0;
    std::size_t total = 0;
    for (std::size_t a : arities) total += count_seq(arities, a, n - 1);
    return total;
}

} // namespace

TEST_CASE("herbrand cardinality matches a recursive count and grows with the bound") {
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> sigs = {
        {"a/0, s/1", {0, 1}},
        {"0/0, -/2", {0, 2}},
        {"true/0, false/0, -/2, [|]/2, []/0", {0, 0, 2, 2, 0}},
        {"a/0, b/0, f/1, g/3", {0, 0, 1, 3}},
    };
    for (const auto& [text, arities] : sigs) {
        CAPTURE(text);
        std::size_t prev = 0, expected = 0;
        for (std::size_t b = 1; b <= 5; ++b) {
            expected += count_exact(arities, b);
            const auto terms = enumerate_herbrand(Signature::parse(text), b);
            CHECK(terms.size() == expected);
            CHECK(terms.size() >= prev);
            CHECK(std::set<Term>(terms.begin(), terms.end()).size() == terms.size());
            for (const auto& t : terms) CHECK(t.size() <= b);
            prev = terms.size();
        }
    }
}

TEST_CASE("bounded groundings respect the node budget") {
    HerbrandUniverse u(Signature::parse("a/0, s/1"));
    const std::vector<Term> atoms = {T("p(X, Y)")};
    std::size_t n = 0;
    for_each_bounded_grounding(u, atoms, 3, [&](const Substitution& s) {
        const Term g = apply(s, atoms[0]);
        CHECK(g.is_ground());
        CHECK(atom_size(g) <= 3);
        ++n;
        return true;
    });
    // (a,a) (a,s a) (s a,a) = 3 pairs with total size <= 3
    CHECK(n == 3);
}

TEST_CASE("parser and printer") {
    CHECK(to_text(T("[a, b | T]")) == "[a,b|T]");
    CHECK(to_text(T("'[|]'(a, [])")) == "[a]");
    CHECK(to_text(T("a - b - c")) == "a-b-c");
    CHECK(T("a - b - c") == T("a - (b - c)"));
    CHECK(to_text(T("X = f(Y)")) == "X = f(Y)");
    CHECK(Q("p(X), q(X).").size() == 2);
    CHECK_THROWS_AS(T("f(a"), ParseError);
    CHECK_THROWS_AS(T("f(a))"), ParseError);
    for (const char* s : {"f(X, [a,b|c])", "[true-X,false-Y]", "'hello world'(x)", "[]", "p(-(a, b))"})
        CHECK(T(to_text(T(s))) == T(s));
}

TEST_CASE("signature parsing") {
    const Signature s = Signature::parse("a/0, [|]/2, -/2");
    CHECK(s.contains(Functor{Symbol("[|]"), 2}));
    CHECK(s.has_constant());
    CHECK_THROWS_AS(Signature::parse("a/x"), std::invalid_argument);
}
