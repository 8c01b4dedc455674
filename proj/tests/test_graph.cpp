#include <doctest.h>

#include "gs/graph.hpp"
#include "gs/modular.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <map>
#include <random>
#include <set>

using namespace gs;
using th::mk;

namespace {

// the two graphs of the opening example
Graph graphP() { return mk({"a", "b", "c", "d"}, {{0, 1}, {2, 3}}); }
Graph graphQ() { return mk({"a", "b", "c", "d"}, {{0, 1}, {0, 3}, {2, 1}, {2, 3}}); }
Graph pathABCD() { return mk({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}}); }

Graph randomGraph(std::mt19937& rng, int n) {
    auto labels = oracle::alphabet2();
    std::vector<std::string> ls;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) ls.push_back(labels[rng() % 4].str());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2) es.emplace_back(i, j);
    return mk(ls, es);
}

}  // namespace

TEST_CASE("atoms") {
    Atom a("a");
    CHECK(a.negated().negated() == a);
    CHECK(a.negated().negative());
    CHECK(parseAtom("~a") == a.negated());
    CHECK(a.negated().pretty() == "¬a");
    CHECK_THROWS(parseAtom("1a"));
}

TEST_CASE("dual") {
    CHECK(dual(Graph()).empty());
    // the negation example
    Graph g = mk({"a", "a", "c", "b", "~a"}, {{0, 1}, {0, 2}, {2, 4}, {3, 2}, {3, 4}});
    Graph expected = mk({"~a", "~a", "~c", "~b", "a"}, {{0, 3}, {1, 3}, {0, 4}, {1, 2}, {1, 4}});
    CHECK(dual(g) == expected);
    // A4 is self-dual up to isomorphism
    Graph a4 = mk({"~a", "a", "a", "~a"}, {{0, 2}, {1, 3}, {0, 3}});
    auto f = findIsomorphism(a4, dual(a4));
    REQUIRE(f);
    CHECK(checkIsomorphism(a4, dual(a4), *f));
}

TEST_CASE("dual is an involution and satisfies De Morgan") {
    std::mt19937 rng(7);
    for (int k = 0; k < 300; ++k) {
        Graph g = randomGraph(rng, rng() % 6), h = randomGraph(rng, rng() % 5);
        CHECK(dual(dual(g)) == g);
        CHECK(findIsomorphism(dual(par(g, h)), tensor(dual(g), dual(h))));
        CHECK(findIsomorphism(dual(tensor(g, h)), par(dual(g), dual(h))));
    }
}

TEST_CASE("par and tensor") {
    Graph a = mk({"a"}), b = mk({"b"});
    Graph g = pathABCD();
    CHECK(findIsomorphism(par(Graph(), g), g));
    CHECK(findIsomorphism(tensor(Graph(), g), g));
    Graph ab = tensor(a, b);
    CHECK(ab.size() == 2);
    CHECK(ab.edgeCount() == 1);
    CHECK(findIsomorphism(par(tensor(a, b), tensor(mk({"c"}), mk({"d"}))), graphP()));
}

TEST_CASE("composeVia") {
    Graph p4 = pathP4();
    Graph g = composeVia(p4, {mk({"a"}), mk({"b"}), mk({"c"}), mk({"d"})});
    CHECK(findIsomorphism(g, pathABCD()));
    Graph q = graphQ();
    std::vector<Graph> singles;
    for (std::size_t i = 0; i < q.size(); ++i) singles.push_back(singleton(q.label(i)));
    CHECK(composeVia(q, singles) == q);
    CHECK(findIsomorphism(composeVia(parConnector(), {g, q}), par(g, q)));
    CHECK_THROWS_AS(composeVia(p4, {g}), std::invalid_argument);
}

TEST_CASE("modules") {
    Graph g = pathABCD();
    CHECK(isModule(g, Mask{0}));
    CHECK(isModule(g, Mask{1}));
    CHECK(isModule(g, g.all()));
    CHECK_FALSE(isModule(g, Mask{0b0110}));
    auto mods = enumerateModules(g);
    CHECK(mods.size() == 6);
    CHECK(enumerateModules(Graph()).size() == 1);
    CHECK(enumerateModules(par(mk({"a"}), mk({"b"}))).size() == 4);
    CHECK_THROWS_AS(enumerateModules(g, 3), LimitError);
    oracle::forEachGraph(5, {Atom("a")}, [](const Graph& h) {
        std::vector<Mask> brute;
        for (Mask s = 0; s < (Mask{1} << h.size()); ++s)
            if (oracle::moduleByDefinition(h, s)) brute.push_back(s);
        auto got = enumerateModules(h);
        CHECK(std::set<Mask>(got.begin(), got.end()) == std::set<Mask>(brute.begin(), brute.end()));
    });
}

TEST_CASE("plugging keeps the plugged graph a module") {
    std::mt19937 rng(11);
    for (int k = 0; k < 200; ++k) {
        GraphContext c;
        c.host = randomGraph(rng, rng() % 5);
        for (VertexId v : c.host.ids())
            if (rng() % 2) c.holeNeighbors.push_back(v);
        Graph m = randomGraph(rng, 1 + rng() % 3);
        Graph out = plug(c, m);
        CHECK(out.size() == c.host.size() + m.size());
        Mask hole = out.all() & ~out.maskOf(c.host.ids());
        CHECK(isModule(out, hole));
        CHECK(out.idsOf(neighbourhood(out, hole)) == c.holeNeighbors);
    }
}

TEST_CASE("isomorphism") {
    Graph q = graphQ();
    auto id = findIsomorphism(q, q);
    REQUIRE(id);
    CHECK(checkIsomorphism(q, q, *id));
    CHECK_FALSE(findIsomorphism(graphP(), graphQ()));
    Bijection bad{{0, 1}, {1, 0}, {2, 2}, {3, 3}};
    CHECK_FALSE(checkIsomorphism(q, q, bad));
}

TEST_CASE("canonical form agrees with isomorphism on all small graphs") {
    CHECK(canonicalForm(graphP()) != canonicalForm(graphQ()));
    CHECK(canonicalForm(par(mk({"a"}), mk({"b"}))) == canonicalForm(par(mk({"b"}), mk({"a"}))));
    for (int n = 0; n <= 4; ++n) {
        std::map<std::string, std::vector<Graph>> classes;
        oracle::forEachGraph(n, oracle::alphabet2(), [&](const Graph& g) {
            classes[canonicalForm(g)].push_back(g);
            Graph cg = canonicalGraph(g);
            CHECK(canonicalForm(cg) == canonicalForm(g));
        });
        std::vector<Graph> reps;
        for (auto& [key, members] : classes) {
            for (auto& m : members) CHECK(oracle::isoByPermutation(members.front(), m));
            reps.push_back(members.front());
        }
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(oracle::isoByPermutation(reps[i], reps[j]));
        // findIsomorphism agrees with the permutation oracle on class representatives and members
        for (auto& [key, members] : classes) {
            auto f = findIsomorphism(members.front(), members.back());
            REQUIRE(f);
            CHECK(checkIsomorphism(members.front(), members.back(), *f));
        }
    }
}

TEST_CASE("canonical form is invariant under renaming on larger graphs") {
    std::mt19937 rng(3);
    for (int k = 0; k < 300; ++k) {
        Graph g = randomGraph(rng, 4 + rng() % 6);
        std::vector<VertexId> ids(g.ids());
        std::shuffle(ids.begin(), ids.end(), rng);
        Bijection r;
        for (std::size_t i = 0; i < ids.size(); ++i) r[g.id(i)] = ids[i] + 100;
        Graph h = renameVertices(g, r);
        CHECK(canonicalForm(g) == canonicalForm(h));
        CHECK(canonicalGraph(g) == canonicalGraph(h));
        Graph other = randomGraph(rng, static_cast<int>(g.size()));
        CHECK((canonicalForm(g) == canonicalForm(other)) == findIsomorphism(g, other).has_value());
    }
}

TEST_CASE("size measure") {
    CHECK(sizeMeasure(Graph()) == SizeMeasure{0, 0});
    CHECK(sizeMeasure(tensor(mk({"a"}), mk({"~a"}))) == SizeMeasure{2, 0});
    CHECK(sizeMeasure(par(mk({"a"}), mk({"~a"}))) == SizeMeasure{2, 1});
}

TEST_CASE("automorphisms") {
    auto aut = automorphismGroup(pathABCD());
    CHECK(aut.size() == 1);   // labels are distinct
    Graph p4 = relabel(pathP4(), Atom("x"));
    aut = automorphismGroup(p4);
    REQUIRE(aut.size() == 2);
    CHECK(aut[1].at(0) == 3);
    CHECK(aut[1].at(1) == 2);
    CHECK(automorphismGroup(mk({"a"})).size() == 1);
    CHECK(automorphismGroup(par(mk({"a"}), mk({"a"}))).size() == 2);
}

TEST_CASE("graph text format") {
    Graph g = parseGraph("# comment\nvertex 3 a\nvertex 7 ~b\n\nedge 3 7\n");
    CHECK(g.size() == 2);
    CHECK(g.hasEdge(7, 3));
    CHECK(g.labelOf(7) == Atom("b", true));
    CHECK(parseGraph(formatGraph(g)) == g);
    try {
        parseGraph("vertex 1 a\nedge 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parseGraph("vertex 1 a\nedge 1 1\n"), ParseError);
    CHECK_THROWS_AS(parseGraph("edge 1 2\n"), ParseError);
    CHECK(toDot(g).find("label=\"¬b\"") != std::string::npos);
}
