#include <doctest.h>

#include "gs/modular.hpp"
#include "gs/prover.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>

using namespace gs;
using th::mk;

namespace {

// ~a a b ~b
Graph a1() { return mk({"~a", "a", "b", "~b"}, {{0, 2}, {1, 3}, {0, 3}, {1, 2}}); }
Graph a2() { return mk({"~a", "a", "b", "~b"}, {{0, 2}, {1, 3}, {0, 3}}); }
Graph a3() { return mk({"~a", "a", "b", "~b"}, {{0, 2}, {1, 3}}); }

Graph chain() { return mk({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}}); }

ProverConfig plain() {
    ProverConfig c;
    c.shortcuts = false;
    return c;
}

// no shortcuts and no sequent oracle: every verdict comes from the rule enumerators
ProverConfig bare() {
    ProverConfig c = plain();
    c.cographOracle = false;
    return c;
}

// one representative per isomorphism class, all graphs with up to n vertices over a, ~a, b, ~b
std::vector<Graph> smallGraphs(int maxN) {
    std::vector<Graph> out;
    std::set<std::string> seen;
    for (int n = 0; n <= maxN; ++n)
        oracle::forEachGraph(n, oracle::alphabet2(), [&](const Graph& g) {
            if (seen.insert(canonicalForm(g)).second) out.push_back(g);
        });
    return out;
}

std::set<std::string> provableSet(std::size_t n, const ProverConfig& cfg) {
    auto v = enumerateProvable(n, oracle::alphabet2(), cfg);
    return {v.begin(), v.end()};
}

bool isCograph(const Graph& g) { return g.empty() || !hasPrimeNode(decompose(g)); }

}  // namespace

TEST_CASE("refutation filters") {
    CHECK(refutedByFilters(mk({"a"})));
    CHECK(refutedByFilters(mk({"a", "b"})));
    CHECK(refutedByFilters(mk({"a", "~a"}, {{0, 1}})));
    CHECK_FALSE(refutedByFilters(mk({"a", "~a"})));
    CHECK_FALSE(refutedByFilters(Graph()));
    // a single non-adjacent dual pair exists for each vertex but no perfect matching
    CHECK(refutedByFilters(mk({"a", "a", "~a", "~a"}, {{0, 2}, {0, 3}})));
}

TEST_CASE("prover agrees with unfiltered exhaustive search") {
    // plain recursion over the full enumerators, with no filters, shortcuts or ordering
    std::map<std::string, bool> memo;
    std::function<bool(const Graph&)> oracleProvable = [&](const Graph& g) {
        if (g.empty()) return true;
        std::string k = canonicalForm(g);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        bool ok = false;
        std::vector<ProofStep> steps = premisesAiDown(g);
        for (auto& st : premisesSsDown(g)) steps.push_back(st);
        for (auto& st : premisesPDown(g)) steps.push_back(st);
        for (auto& st : steps)
            if (!ok && oracleProvable(st.premise)) ok = true;
        return memo[k] = ok;
    };
    Prover p;
    for (const Graph& g : smallGraphs(4)) {
        bool expected = oracleProvable(g);
        CHECK(p.provable(g) == expected);
        if (expected) CHECK_FALSE(refutedByFilters(g));
    }
}

TEST_CASE("the three example graphs") {
    for (const ProverConfig& cfg : {ProverConfig{}, plain()}) {
        auto p1 = prove(a1(), cfg);
        REQUIRE(p1);
        CHECK(p1->conclusion == a1());
        CHECK(checkDerivation(*p1, RuleSet::gs()).ok);
        CHECK_FALSE(prove(a2(), cfg));
        CHECK_FALSE(prove(a3(), cfg));
    }
}

TEST_CASE("implications between chains") {
    Graph twoEdges = mk({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
    Graph lessAB = mk({"a", "b", "c", "d"}, {{1, 2}, {2, 3}});
    CHECK_FALSE(proveImplication(chain(), twoEdges));
    auto d = proveImplication(chain(), lessAB);
    REQUIRE(d);
    CHECK(checkDerivation(*d, RuleSet::gs()).ok);
    CHECK(d->conclusion == par(dual(chain()), lessAB));
}

TEST_CASE("removing an edge from the diamond") {
    Graph g = mk({"a", "b", "c", "d"}, {{0, 2}, {1, 3}, {0, 3}, {2, 3}});
    Graph h = mk({"a", "b", "c", "d"}, {{0, 2}, {1, 3}, {0, 3}});
    for (const ProverConfig& cfg : {ProverConfig{}, plain()}) {
        auto d = proveImplication(g, h, cfg);
        REQUIRE(d);
        CHECK(checkDerivation(*d, RuleSet::gs()).ok);
        CHECK(d->length() >= 4);   // at least one ai_down per dual pair
    }
    auto back = proveImplication(h, g);
    CHECK_FALSE(back);
}

TEST_CASE("identity implications on small graphs") {
    Prover p;
    for (const Graph& g : smallGraphs(4)) {
        auto d = p.prove(par(dual(g), g));
        REQUIRE(d);
        CHECK(checkDerivation(*d, RuleSet::gs()).ok);
    }
}

TEST_CASE("enumerateProvable base cases") {
    CHECK(enumerateProvable(0, oracle::alphabet2()) == std::vector<std::string>{canonicalForm(Graph())});
    CHECK(enumerateProvable(1, oracle::alphabet2()).empty());
    std::vector<Atom> onlyA = {Atom("a"), Atom("a").negated()};
    CHECK(enumerateProvable(2, onlyA) == std::vector<std::string>{canonicalForm(mk({"a", "~a"}))});
    // the brute force over all six labelled 2-vertex graphs agrees
    std::set<std::string> brute;
    oracle::forEachGraph(2, onlyA, [&](const Graph& g) {
        if (prove(g)) brute.insert(canonicalForm(g));
    });
    CHECK(brute.size() == 1);
    CHECK_THROWS_AS(enumerateProvable(7, onlyA), LimitError);
}

TEST_CASE("consistency: a provable graph has an unprovable dual") {
    Prover p;
    for (std::size_t n : {2u, 4u})
        oracle::forEachGraph(static_cast<int>(n), oracle::alphabet2(), [&](const Graph& g) {
            if (p.provable(g)) CHECK_FALSE(p.provable(dual(g)));
        });
}

TEST_CASE("structural shortcuts and the sequent oracle agree with plain search") {
    for (std::size_t n : {2u, 4u, 6u}) CHECK(provableSet(n, {}) == provableSet(n, plain()));
    for (std::size_t n : {2u, 4u}) CHECK(provableSet(n, {}) == provableSet(n, bare()));
}

TEST_CASE("sequent oracle on P4-free graphs") {
    CHECK(mixProvable(Graph()));
    CHECK(mixProvable(mk({"a", "~a"})));
    CHECK_FALSE(mixProvable(mk({"a", "~a"}, {{0, 1}})));
    // mix: a|~a|b|~b
    CHECK(mixProvable(mk({"a", "~a", "b", "~b"})));
    CHECK_THROWS_AS(mixProvable(chain()), std::invalid_argument);
    Prover p(bare());
    for (int n : {2, 4, 6})
        for (const Graph& g : th::balancedClasses(n))
            if (isP4Free(g)) CHECK(mixProvable(g) == p.provable(g));
}

TEST_CASE("tensor splitting and prime factorisation") {
    Prover p(plain());
    auto gs = smallGraphs(4);
    std::mt19937 rng(1);
    for (int round = 0; round < 300; ++round) {
        const Graph& x = gs[rng() % gs.size()];
        const Graph& y = gs[rng() % gs.size()];
        if (x.empty() || y.empty() || x.size() + y.size() > 8) continue;
        CHECK(p.provable(tensor(x, y)) == (p.provable(x) && p.provable(y)));
    }
    // P4<M1..M4>: provable iff some Mi and the rest are provable
    std::vector<Graph> blocks = {mk({"a", "~a"}), mk({"a"}), mk({"~a"}), mk({"b", "~b"}, {{0, 1}})};
    for (std::size_t i = 0; i < 256; ++i) {
        std::vector<Graph> ms;
        for (std::size_t k = 0, c = i; k < 4; ++k, c /= 4) ms.push_back(blocks[c % 4]);
        Graph g = composeVia(pathP4(), ms);
        bool expected = false;
        std::size_t offset = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            Mask part = 0;
            for (std::size_t j = 0; j < ms[k].size(); ++j) part |= Mask{1} << (offset + j);
            offset += ms[k].size();
            if (p.provable(induced(g, part)) && p.provable(removeVertices(g, part))) expected = true;
        }
        CHECK(p.provable(g) == expected);
    }
}

TEST_CASE("implication is transitive on small graphs") {
    auto gs = smallGraphs(3);
    Prover p;
    std::map<std::pair<std::size_t, std::size_t>, bool> imp;
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = 0; j < gs.size(); ++j)
            if (gs[i].size() == gs[j].size()) imp[{i, j}] = p.provable(par(dual(gs[i]), gs[j]));
    std::size_t chains = 0;
    for (auto [ij, ok] : imp) {
        if (!ok) continue;
        for (std::size_t k = 0; k < gs.size(); ++k) {
            auto it = imp.find({ij.second, k});
            if (it == imp.end() || !it->second) continue;
            ++chains;
            CHECK(imp.at({ij.first, k}));
        }
    }
    CHECK(chains > 0);
}

TEST_CASE("up rules are admissible") {
    Prover p;
    std::size_t applied = 0;
    for (int n : {2, 4, 6})
        for (const Graph& g : th::balancedClasses(n)) {
            if (!p.provable(g)) continue;
            for (Rule r : {Rule::AiUp, Rule::SsUp, Rule::PUp})
                for (auto& s : upInstances(g, r)) {
                    ++applied;
                    CHECK(p.provable(s.conclusion));
                }
        }
    CHECK(applied > 0);
}

TEST_CASE("extended rule sets prove the same graphs") {
    ProverConfig ss = bare();
    ss.rules = RuleSet::gsSsUp();
    ProverConfig g = bare();
    g.rules = RuleSet::gsGDown();
    for (std::size_t n : {2u, 4u}) {
        auto base = provableSet(n, bare());
        CHECK(provableSet(n, ss) == base);
        CHECK(provableSet(n, g) == base);
    }
}

TEST_CASE("analytic search") {
    CHECK(proveAnalytic(Graph()).value().steps.empty());
    ProverConfig analytic = bare();
    analytic.rules = RuleSet::gsSsUp();
    analytic.analyticPruning = true;
    ProverConfig full = bare();
    full.rules = RuleSet::gsSsUp();
    Prover pa(analytic), pf(full);
    for (std::size_t n : {2u, 4u})
        oracle::forEachGraph(static_cast<int>(n), oracle::alphabet2(), [&](const Graph& g) {
            ProofResult ra = pa.run(g);
            CHECK(ra.verdict == pf.run(g).verdict);
            if (ra.proof && isCograph(g)) {
                for (auto& s : ra.proof->steps) CHECK(isCograph(s.premise));
            }
        });
    Graph concl = mk({"~a", "~b", "~c", "~d", "a", "b", "c", "d"}, {{4, 6}, {4, 7}, {5, 7}, {0, 1}, {1, 2}});
    auto d = proveAnalytic(concl);
    REQUIRE(d);
    CHECK(checkDerivation(*d, RuleSet::gsSsUp()).ok);
}

TEST_CASE("proof length bound") {
    Prover p(plain());
    for (int n : {2, 4, 6})
        for (const Graph& g : th::balancedClasses(n))
            if (auto d = p.prove(g)) CHECK(d->length() <= static_cast<std::size_t>(n * n + n));
}

TEST_CASE("limits are a separate outcome") {
    ProverConfig c;
    c.vertexLimit = 2;
    ProofResult r = Prover(c).run(a1());
    CHECK(r.verdict == Verdict::Limit);
    CHECK_THROWS_AS(prove(a1(), c), LimitError);

    ProverConfig tiny;
    tiny.memoLimit = 1;
    tiny.shortcuts = false;
    CHECK(Prover(tiny).run(a1()).verdict == Verdict::Limit);
    CHECK(verdictName(Verdict::Refuted) == "not provable");
}

TEST_CASE("the memo is reused and results are deterministic") {
    Prover p;
    auto d1 = p.prove(a1());
    std::size_t size = p.memoSize();
    auto d2 = p.prove(a1());
    CHECK(p.memoSize() == size);
    REQUIRE(d1);
    REQUIRE(d2);
    CHECK(formatDerivation(*d1) == formatDerivation(*d2));
    CHECK(formatDerivation(*prove(a1())) == formatDerivation(*d1));
}
