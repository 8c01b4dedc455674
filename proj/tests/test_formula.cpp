#include <doctest.h>

#include "gs/formula.hpp"
#include "gs/modular.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gs;
using th::mk;

TEST_CASE("parsing") {
    Formula p = parseFormula("(a*b)|(c*d)");
    REQUIRE(p.kind() == Formula::Kind::Par);
    CHECK(p.left().kind() == Formula::Kind::Tensor);
    CHECK(p.left().left().atom() == Atom("a"));
    CHECK(parseFormula("a*b|c*d") == p);

    Formula n = parseFormula("~(a|b)");
    REQUIRE(n.kind() == Formula::Kind::Tensor);
    CHECK(n.left().atom() == Atom("a", true));
    CHECK(n.right().atom() == Atom("b", true));
    CHECK(parseFormula("~~a") == parseFormula("a"));

    CHECK(parseFormula("1").kind() == Formula::Kind::Unit);
    CHECK(parseFormula(" ( 1 ) ").kind() == Formula::Kind::Unit);

    try {
        parseFormula("a * (b |");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 9);
    }
    CHECK_THROWS_AS(parseFormula("a b"), ParseError);
    CHECK_THROWS_AS(parseFormula(""), ParseError);
    CHECK_THROWS_AS(parseFormula("a | )"), ParseError);
}

TEST_CASE("printing round trips") {
    for (const char* s : {"a*b|c*d", "(a|b)*~c", "1", "a|(b*(c|~d))"}) {
        Formula f = parseFormula(s);
        CHECK(parseFormula(formatAscii(f)) == f);
    }
    CHECK(formatAscii(parseFormula("(a|b)*~c")) == "(a|b)*~c");
    CHECK(formatUnicode(parseFormula("(a|b)*~c")) == "(a ⅋ b) ⊗ ¬c");
    CHECK(formatUnicode(Formula()) == "∘");
}

TEST_CASE("toGraph") {
    Graph p = toGraph(parseFormula("(a*b)|(c*d)"));
    CHECK(findIsomorphism(p, mk({"a", "b", "c", "d"}, {{0, 1}, {2, 3}})));
    CHECK(toGraph(parseFormula("1|1")).empty());
    Graph a1 = mk({"~a", "a", "b", "~b"}, {{0, 2}, {1, 3}, {0, 3}, {1, 2}});
    CHECK(findIsomorphism(toGraph(parseFormula("(~a|a)*(b|~b)")), a1));
}

TEST_CASE("fromCograph") {
    CHECK(fromCograph(Graph())->kind() == Formula::Kind::Unit);
    Graph q = mk({"a", "b", "c", "d"}, {{0, 1}, {0, 3}, {2, 1}, {2, 3}});
    auto f = fromCograph(q);
    REQUIRE(f);
    CHECK(structEquiv(*f, parseFormula("(a|c)*(b|d)")));
    CHECK_FALSE(fromCograph(mk({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}})));
}

TEST_CASE("structural equivalence") {
    CHECK(structEquiv(parseFormula("a|(b|c)"), parseFormula("(a|b)|c")));
    CHECK(structEquiv(parseFormula("a*1"), parseFormula("a")));
    CHECK(structEquiv(parseFormula("a*b"), parseFormula("b*a")));
    CHECK_FALSE(structEquiv(parseFormula("a*b"), parseFormula("a|b")));
}

TEST_CASE("formula and graph correspondences hold exhaustively") {
    auto lits = oracle::alphabet2();
    int count = 0;
    for (int k = 1; k <= 4; ++k)
        for (const Formula& f : oracle::formulas(k, lits)) {
            Graph g = toGraph(f);
            CHECK(findIsomorphism(toGraph(f.negated()), dual(g)));
            CHECK(isP4Free(g));
            auto back = fromCograph(g);
            REQUIRE(back);
            CHECK(structEquiv(*back, f));
            ++count;
        }
    CHECK(count == 4 + 32 + 512 + 10240);
}
