#include <doctest.h>

#include "gs/modular.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <random>

using namespace gs;
using th::mk;

namespace {

Graph atom(const char* s) { return mk({s}); }

Graph p4of(Graph a, Graph b, Graph c, Graph d) { return composeVia(pathP4(), {a, b, c, d}); }

// the running decomposition example, with the f/g module drawn as in its tree
Graph spaghetti() {
    return p4of(par(atom("f"), atom("g")), p4of(atom("a"), atom("b"), atom("c"), atom("d")),
                tensor(atom("~f"), atom("~g")), p4of(atom("~a"), atom("~b"), atom("~c"), atom("~d")));
}

void checkInvariants(const MDTree& t) {
    if (t.isLeaf()) {
        CHECK(std::popcount(t.vertices) == 1);
        return;
    }
    CHECK(t.children.size() >= 2);
    Mask u = 0;
    for (auto& c : t.children) {
        CHECK((u & c.vertices) == 0);
        u |= c.vertices;
        if (t.kind == MDTree::Kind::Par) CHECK(c.kind != MDTree::Kind::Par);
        if (t.kind == MDTree::Kind::Tensor) CHECK(c.kind != MDTree::Kind::Tensor);
        checkInvariants(c);
    }
    CHECK(u == t.vertices);
    if (t.kind == MDTree::Kind::Prime) {
        CHECK(t.quotient.size() >= 4);
        CHECK(t.quotient.size() == t.children.size());
        CHECK(oracle::primeByDefinition(t.quotient));
    }
}

}  // namespace

TEST_CASE("decompose examples") {
    MDTree leaf = decompose(atom("a"));
    CHECK(leaf.isLeaf());
    CHECK_THROWS(decompose(Graph()));

    Graph p = mk({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
    MDTree tp = decompose(p);
    CHECK(tp.kind == MDTree::Kind::Par);
    CHECK(formatTree(tp) == "a*b|c*d");

    MDTree ts = decompose(spaghetti());
    REQUIRE(ts.kind == MDTree::Kind::Prime);
    REQUIRE(ts.children.size() == 4);
    CHECK(formatTree(ts) == "P4<f|g, P4<a, b, c, d>, ~f*~g, P4<~a, ~b, ~c, ~d>>");
    CHECK(findIsomorphism(recompose(ts), spaghetti()));
    CHECK(recompose(decompose(atom("a"))) == atom("a"));
    Graph pa = par(atom("a"), atom("~a"));
    CHECK(recompose(decompose(pa)) == pa);
}

TEST_CASE("decomposition is exhaustively consistent up to five vertices") {
    for (int n = 1; n <= 5; ++n) {
        oracle::forEachGraph(n, {Atom("a")}, [](const Graph& g) {
            MDTree t = decompose(g);
            checkInvariants(t);
            CHECK(recompose(t) == g);
            // the four cases of the decomposition lemma are exclusive
            bool single = g.size() == 1;
            bool disconnected = components(g, g.all()).size() > 1;
            bool coDisconnected = coComponents(g, g.all()).size() > 1;
            CHECK(int(single) + int(disconnected) + int(coDisconnected) <= 1);
            MDTree::Kind expected = single          ? MDTree::Kind::Leaf
                                    : disconnected   ? MDTree::Kind::Par
                                    : coDisconnected ? MDTree::Kind::Tensor
                                                     : MDTree::Kind::Prime;
            CHECK(t.kind == expected);
            CHECK(isP4Free(g) == !oracle::hasInducedP4(g));
            CHECK(isPrime(g) == oracle::primeByDefinition(g));
        });
    }
}

TEST_CASE("prime graphs") {
    CHECK(isPrime(relabel(pathP4(), Atom("a"))));
    CHECK(isPrime(par(atom("a"), atom("b"))));
    CHECK(isPrime(tensor(atom("a"), atom("b"))));
    oracle::forEachGraph(3, {Atom("a")}, [](const Graph& g) { CHECK_FALSE(isPrime(g)); });
    CHECK(isP4Free(Graph()));
    CHECK_FALSE(isP4Free(mk({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}})));
}

TEST_CASE("module lattice properties") {
    std::mt19937 rng(5);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        int n = 3 + static_cast<int>(rng() % 4);
        std::vector<std::string> ls(n, "a");
        std::vector<std::pair<int, int>> es;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) es.emplace_back(i, j);
        Graph g = mk(ls, es);
        auto mods = enumerateModules(g);
        for (Mask m : mods)
            for (Mask nn : mods) {
                CHECK(isModule(g, m & nn));
                if (m & nn) CHECK(isModule(g, m | nn));
                if ((nn & ~m) != 0) CHECK(isModule(g, m & ~nn));
                ++checked;
            }
    }
    CHECK(checked > 1000);
}

TEST_CASE("connectors and subconnectors") {
    auto cs = connectors(decompose(spaghetti()));
    int p4 = 0, pars = 0, tensors = 0;
    for (auto& c : cs) {
        if (c.size() == 4) ++p4;
        else if (c.edgeCount() == 1) ++tensors;
        else ++pars;
    }
    CHECK(p4 == 3);
    CHECK(pars == 1);
    CHECK(tensors == 1);
    auto subs = subconnectors(spaghetti());
    CHECK(subs.size() == 3);
    std::string tensorKey = connectorKey(tensorConnector());
    std::mt19937 rng(9);
    for (int k = 0; k < 50; ++k) {
        Graph g = mk({"a", "b", "c", "d", "e"}, {{0, 1}});
        if (rng() % 2) g = addEdges(g, Mask{4}, Mask{8});
        auto s = subconnectors(g);
        CHECK(std::find(s.begin(), s.end(), tensorKey) != s.end());
    }
    CHECK(subconnectors(atom("a")).empty());
}
