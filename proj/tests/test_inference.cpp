#include <doctest.h>

#include "gs/inference.hpp"
#include "gs/modular.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace gs;
using th::mk;

namespace {

Graph path4() { return mk({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}}); }
Graph graphP() { return mk({"a", "b", "c", "d"}, {{0, 1}, {2, 3}}); }

std::size_t countRule(const Derivation& d, Rule r) {
    return static_cast<std::size_t>(
        std::count_if(d.steps.begin(), d.steps.end(), [&](const ProofStep& s) { return s.rule == r; }));
}

Derivation single(const ProofStep& s) {
    Derivation d;
    d.premise = s.premise;
    d.conclusion = s.conclusion;
    d.steps = {s};
    return d;
}

// ~a ~b ~c ~d a b c d on ids 0..7
Graph ssUpPremise() {
    return mk({"~a", "~b", "~c", "~d", "a", "b", "c", "d"}, {{4, 6}, {5, 7}, {4, 7}, {0, 1}, {1, 2}, {7, 6}});
}

// the three-step proof using identities
Derivation shortProof() {
    Graph six = mk({"~a", "~b", "~c", "~d", "a", "b", "c", "d"}, {{4, 6}, {0, 1}, {1, 2}});
    six = removeVertices(six, six.maskOf({3, 7}));
    Graph eight = mk({"~a", "~b", "~c", "~d", "a", "b", "c", "d"},
                     {{4, 6}, {0, 1}, {1, 2}, {3, 4}, {3, 5}, {7, 4}, {7, 5}});
    Graph concl = mk({"~a", "~b", "~c", "~d", "a", "b", "c", "d"}, {{4, 6}, {4, 7}, {5, 7}, {0, 1}, {1, 2}});
    ProofStep s1;
    s1.rule = Rule::IDown;
    s1.conclusion = six;
    s1.position = {0, 1, 2, 4, 5, 6};
    s1.params.a = {0, 1, 2};
    s1.params.b = {4, 5, 6};
    s1.params.map = {{0, 4}, {1, 5}, {2, 6}};
    ProofStep s2;
    s2.rule = Rule::IDown;
    s2.premise = six;
    s2.conclusion = eight;
    s2.position = {3, 7};
    s2.params.a = {3};
    s2.params.b = {7};
    s2.params.map = {{3, 7}};
    ProofStep s3;
    s3.rule = Rule::SsDown;
    s3.premise = eight;
    s3.conclusion = concl;
    s3.position = {3, 4, 5, 6, 7};
    s3.params.a = {3};
    s3.params.b = {4, 5, 6, 7};
    s3.params.s = {4, 5};
    Derivation d;
    d.conclusion = concl;
    d.steps = {s1, s2, s3};
    return d;
}

// the pentagon counterexample: a b c ~c d | ~a ~b ~d ~e e
Graph pentagonConclusion() {
    return mk({"a", "b", "c", "~c", "d", "~a", "~b", "~d", "~e", "e"},
              {{0, 2}, {0, 3}, {0, 4}, {1, 4}, {5, 6}, {7, 8}, {7, 9}, {8, 5}, {9, 5}});
}

ProofStep pentagonStep(Rule r) {
    Graph c = pentagonConclusion();
    std::vector<Mask> slots = {c.maskOf({0, 5}), c.maskOf({1, 6}), c.maskOf({2, 3}), c.maskOf({4, 7}),
                               c.maskOf({8, 9})};
    Graph premise = c;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) premise = addEdges(premise, slots[i], slots[j]);
    ProofStep s;
    s.rule = r;
    s.premise = premise;
    s.conclusion = c;
    s.position = c.ids();
    // the 5-cycle complement on slots, which is again a 5-cycle
    s.params.quotient = relabel(mk({"a", "a", "a", "a", "a"}, {{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}}), Atom());
    s.params.ms = {{0}, {1}, {2, 3}, {4}, {}};
    s.params.ns = {{5}, {6}, {}, {7}, {8, 9}};
    return s;
}

}  // namespace

TEST_CASE("rule names round trip") {
    for (Rule r : {Rule::AiDown, Rule::SsDown, Rule::PDown, Rule::AiUp, Rule::SsUp, Rule::PUp, Rule::IDown,
                   Rule::IUp, Rule::Sw, Rule::GDown, Rule::GUp, Rule::Iso}) {
        CHECK(parseRule(ruleName(r)) == r);
        CHECK(parseRule(rulePretty(r)) == r);
    }
    CHECK_FALSE(parseRule("cut"));
    CHECK(RuleSet::gs().str() == "{ai_down,ss_down,p_down,iso}");
    CHECK(RuleSet::sgs().contains(Rule::PUp));
    CHECK_FALSE(RuleSet::gs().contains(Rule::IDown));
}

TEST_CASE("atomic interaction steps") {
    Graph c = mk({"a", "~a"});
    ProofStep s;
    s.rule = Rule::AiDown;
    s.conclusion = c;
    s.position = {0, 1};
    s.params.v = 0;
    s.params.w = 1;
    CHECK(checkStep(s) == "");
    CHECK(checkStep(s, RuleSet{Rule::SsDown}) != "");

    ProofStep bad = s;
    bad.conclusion = mk({"a", "~a"}, {{0, 1}});
    CHECK(checkStep(bad) != "");
    bad.conclusion = mk({"a", "a"});
    CHECK(checkStep(bad) != "");
    bad = s;
    bad.position = {0};
    CHECK(checkStep(bad) != "");

    // not a module: b sees only a
    ProofStep nm = s;
    nm.conclusion = mk({"a", "~a", "b"}, {{0, 2}});
    nm.premise = mk({"a", "~a", "b"});
    nm.premise = removeVertices(nm.premise, nm.premise.maskOf({0, 1}));
    CHECK(checkStep(nm).find("module") != std::string::npos);

    ProofStep up = dualStep(s);
    CHECK(up.rule == Rule::AiUp);
    CHECK(checkStep(up) == "");
}

TEST_CASE("ss_down and ss_up on the example") {
    Graph premise = ssUpPremise();
    Graph concl = removeEdges(premise, premise.maskOf({6}), premise.maskOf({7}));
    ProofStep up;
    up.rule = Rule::SsUp;
    up.premise = premise;
    up.conclusion = concl;
    up.params.a = {7};
    up.params.b = {4, 5, 6};
    up.params.s = {4, 5};
    up.position = {4, 5, 6, 7};
    CHECK(checkStep(up) == "");
    CHECK(applyUpRule(premise, Rule::SsUp, up.params) == concl);
    CHECK_FALSE(checkStep(up, RuleSet::gs()).empty());
    CHECK(checkStep(up, RuleSet::gsSsUp()) == "");

    StepParams noop = up.params;
    noop.s = {4, 5, 6};
    CHECK_THROWS_AS(applyUpRule(premise, Rule::SsUp, noop), std::invalid_argument);

    ProofStep down = dualStep(up);
    CHECK(down.rule == Rule::SsDown);
    CHECK(checkStep(down) == "");
}

TEST_CASE("switch is an instance of ss_down") {
    // a | (b * c)  from  (a | b) * c
    Graph c = mk({"a", "b", "c"}, {{1, 2}});
    ProofStep s;
    s.rule = Rule::Sw;
    s.conclusion = c;
    s.premise = addEdges(c, c.maskOf({0}), c.maskOf({2}));
    s.params.a = {0};
    s.params.b = {1};
    s.params.s = {2};
    s.position = {0, 1, 2};
    CHECK(checkStep(s) == "");

    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        Graph g = th::randomGraph(rng, 2 + static_cast<int>(rng() % 5));
        std::set<std::string> ss;
        for (auto& t : premisesSsDown(g)) ss.insert(canonicalForm(t.premise));
        for (Mask m : enumerateModules(g))
            for (Mask a = m; a; a = (a - 1) & m)
                for (Mask cc = m & ~a; cc; cc = (cc - 1) & (m & ~a)) {
                    Mask b = m & ~a & ~cc;
                    ProofStep t;
                    t.rule = Rule::Sw;
                    t.conclusion = g;
                    t.premise = addEdges(g, a, cc);
                    t.params.a = g.idsOf(a);
                    t.params.b = g.idsOf(b);
                    t.params.s = g.idsOf(cc);
                    t.position = g.idsOf(m);
                    if (checkStep(t).empty()) CHECK(ss.count(canonicalForm(t.premise)) == 1);
                }
    }
}

TEST_CASE("premise enumerators are sound and shrink the measure") {
    std::mt19937 rng(11);
    for (int round = 0; round < 300; ++round) {
        Graph g = th::randomGraph(rng, 1 + static_cast<int>(rng() % 7));
        std::vector<std::vector<ProofStep>> all = {premisesAiDown(g), premisesSsDown(g), premisesSsDownReduced(g),
                                                    premisesPDown(g), premisesGDown(g)};
        for (auto& list : all)
            for (auto& s : list) {
                CHECK(checkDerivation(single(s)).ok);
                CHECK(sizeMeasure(s.premise) < sizeMeasure(s.conclusion));
            }
        for (auto& s : premisesSsUp(g)) CHECK(checkStep(s) == "");
        for (Rule r : {Rule::AiUp, Rule::SsUp, Rule::PUp})
            for (auto& s : upInstances(g, r)) {
                CHECK(s.premise == g);
                CHECK(checkStep(s) == "");
                CHECK(applyUpRule(g, r, s.params) == s.conclusion);
            }
    }
}

TEST_CASE("reduced ss_down premises reach every full premise") {
    // every full premise is reachable from reduced ones by further reduced steps downward, so the
    // reduced one-step premises form a subset whose canonical forms all appear in the full list
    std::mt19937 rng(5);
    for (int round = 0; round < 200; ++round) {
        Graph g = th::randomGraph(rng, 2 + static_cast<int>(rng() % 5));
        std::set<std::string> full;
        for (auto& s : premisesSsDown(g)) full.insert(canonicalForm(s.premise));
        std::set<std::string> reduced;
        for (auto& s : premisesSsDownReduced(g)) reduced.insert(canonicalForm(s.premise));
        for (auto& k : reduced) CHECK(full.count(k) == 1);
        // full premises are exactly those reachable by chains of reduced steps
        std::set<std::string> seen;
        std::vector<Graph> frontier = {g};
        while (!frontier.empty()) {
            Graph h = frontier.back();
            frontier.pop_back();
            for (auto& s : premisesSsDownReduced(h))
                if (seen.insert(canonicalForm(s.premise)).second) frontier.push_back(s.premise);
        }
        for (auto& k : full) CHECK(seen.count(k) == 1);
    }
}

TEST_CASE("p_down enumeration matches exhaustive slot search") {
    Graph g = mk({"a", "b", "c", "d", "~a", "~b", "~c", "~d"}, {{0, 1}, {1, 2}, {2, 3}, {4, 6}, {4, 7}, {5, 7}});
    auto steps = premisesPDown(g);
    REQUIRE(!steps.empty());
    for (auto& s : steps) {
        CHECK(s.params.quotient.size() >= 4);
        CHECK(isPrime(s.params.quotient));
    }
    std::set<std::string> got;
    for (auto& s : steps) got.insert(canonicalForm(s.premise));
    // the join of the two paths slot by slot
    Graph joined = g;
    std::vector<std::pair<VertexId, VertexId>> slots = {{0, 4}, {1, 5}, {2, 6}, {3, 7}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            joined = addEdges(joined, g.maskOf({slots[i].first, slots[i].second}),
                              g.maskOf({slots[j].first, slots[j].second}));
    CHECK(got.count(canonicalForm(joined)) == 1);
}

TEST_CASE("identity derivations") {
    SUBCASE("path on four atoms") {
        Derivation d = deriveIdentity(path4());
        CHECK(d.length() == 5);
        CHECK(countRule(d, Rule::AiDown) == 4);
        CHECK(countRule(d, Rule::PDown) == 1);
        CHECK(d.isProof());
        CHECK(d.conclusion == par(dual(path4()), path4()));
        CHECK(checkDerivation(d, RuleSet::gs()).ok);
    }
    SUBCASE("two disjoint edges") {
        Derivation d = deriveIdentity(graphP());
        CHECK(checkDerivation(d, RuleSet::gs()).ok);
        CHECK(d.conclusion == par(dual(graphP()), graphP()));
    }
    SUBCASE("all small graphs") {
        for (int n = 1; n <= 4; ++n)
            oracle::forEachGraph(n, oracle::alphabet2(), [&](const Graph& g) {
                Derivation d = deriveIdentity(g);
                CHECK(d.conclusion == par(dual(g), g));
                auto r = checkDerivation(d, RuleSet::gs());
                CHECK_MESSAGE(r.ok, describe(g) << ": step " << r.failedStep << ": " << r.message);
            });
    }
}

TEST_CASE("general g_down derivations") {
    SUBCASE("tensor of two atoms ends in two ss_down steps") {
        Graph t = mk({"x", "x"}, {{0, 1}});
        Derivation d = deriveGDown(t, {mk({"a"}), mk({"b"})}, {mk({"~a"}), mk({"~b"})});
        CHECK(checkDerivation(d, RuleSet::gs()).ok);
        REQUIRE(d.steps.size() == 2);
        CHECK(d.steps[0].rule == Rule::SsDown);
        CHECK(d.steps[1].rule == Rule::SsDown);
    }
    SUBCASE("empty N slots give M1*...*Mn -> g<M>") {
        Graph q = path4();
        std::vector<Graph> ms = {mk({"a", "b"}, {{0, 1}}), mk({"c"}), mk({"d", "e"}), mk({"f"})};
        std::vector<Graph> ns(4);
        Derivation d = deriveGDown(q, ms, ns);
        CHECK(checkDerivation(d, RuleSet::gs()).ok);
        CHECK(d.conclusion == composeVia(q, ms));
    }
    SUBCASE("random quotients and slots") {
        std::mt19937 rng(3);
        for (int round = 0; round < 150; ++round) {
            Graph q = th::randomGraph(rng, 1 + static_cast<int>(rng() % 5));
            std::vector<Graph> ms, ns;
            for (std::size_t i = 0; i < q.size(); ++i) {
                int m = static_cast<int>(rng() % 3), n = m ? static_cast<int>(rng() % 3) : 0;
                ms.push_back(th::randomGraph(rng, m));
                ns.push_back(th::randomGraph(rng, n));
            }
            Derivation d = deriveGDown(q, ms, ns);
            auto r = checkDerivation(d, RuleSet::gs());
            CHECK_MESSAGE(r.ok, describe(q) << ": step " << r.failedStep << ": " << r.message);
        }
    }
    CHECK_THROWS_AS(deriveGDown(mk({"x", "x"}), {Graph(), mk({"a"})}, {mk({"b"}), mk({"c"})}), std::invalid_argument);
}

TEST_CASE("three-step proof with identities") {
    Derivation d = shortProof();
    CHECK(d.length() == 3);
    CHECK(checkDerivation(d, RuleSet::gs().with(Rule::IDown)).ok);
    auto r = checkDerivation(d, RuleSet::gs());
    CHECK_FALSE(r.ok);
    CHECK(r.failedStep == 1);

    Derivation e = expandIdentities(d);
    CHECK(e.conclusion == d.conclusion);
    CHECK(checkDerivation(e, RuleSet::gs()).ok);
    CHECK(countRule(e, Rule::IDown) == 0);

    Derivation emptied = d;
    emptied.steps[2].params.s.clear();
    auto bad = checkDerivation(emptied, RuleSet::gs().with(Rule::IDown));
    CHECK_FALSE(bad.ok);
    CHECK(bad.failedStep == 3);

    std::string golden = th::slurp(std::string(GS_SOURCE_DIR) + "/corpus/golden/diamond.proof");
    CHECK(formatDerivation(d) == golden);
    CHECK(checkDerivation(parseDerivation(golden), RuleSet::gs().with(Rule::IDown)).ok);
}

TEST_CASE("g_down instance outside GS") {
    ProofStep g = pentagonStep(Rule::GDown);
    CHECK(checkStep(g, RuleSet::gsGDown()) == "");
    CHECK(checkStep(g, RuleSet::gs()) != "");
    ProofStep p = pentagonStep(Rule::PDown);
    p.params.side = 'M';
    CHECK(checkStep(p).find("empty") != std::string::npos);
    p.params.side = 'N';
    CHECK(checkStep(p).find("empty") != std::string::npos);
    // a slot with empty M and non-empty N is outside the constructive lemma
    std::vector<Graph> ms = {mk({"a"}), mk({"b"}), mk({"c", "~c"}), mk({"d"}), Graph()};
    std::vector<Graph> ns = {mk({"~a"}), mk({"~b"}), Graph(), mk({"~d"}), mk({"~e", "e"})};
    CHECK_THROWS_AS(deriveGDown(pentagonStep(Rule::GDown).params.quotient, ms, ns), std::invalid_argument);
}

TEST_CASE("derivation lifting and renaming") {
    Derivation d = deriveIdentity(mk({"a"}));
    GraphContext ctx{mk({"b", "c"}, {{0, 1}}), {0}};
    Bijection r = {{0, 10}, {1, 11}};
    Derivation moved = renameDerivation(d, r);
    CHECK(checkDerivation(moved).ok);
    Derivation lifted = liftDerivation(moved, ctx);
    CHECK(checkDerivation(lifted).ok);
    CHECK(lifted.premise == ctx.host);
    CHECK_THROWS_AS(liftDerivation(d, ctx), std::invalid_argument);

    Derivation x = deriveIdentity(path4());
    CHECK_THROWS_AS(compose(x, d), std::invalid_argument);
    CHECK(compose(x, emptyDerivation(x.conclusion)).steps.size() == x.steps.size());
}

TEST_CASE("text format round trip") {
    for (const Derivation& d : {deriveIdentity(path4()), shortProof(), single(pentagonStep(Rule::GDown)),
                                deriveGDown(mk({"x", "x"}, {{0, 1}}), {mk({"a"}), mk({"b"})}, {mk({"~a"}), Graph()})}) {
        std::string text = formatDerivation(d);
        Derivation back = parseDerivation(text);
        CHECK(formatDerivation(back) == text);
        CHECK(checkDerivation(back).ok == checkDerivation(d).ok);
        CHECK(back.steps.size() == d.steps.size());
    }
    CHECK_THROWS_AS(parseDerivation("derivation\npremise g0\n"), ParseError);
    CHECK_THROWS_AS(parseDerivation("derivation\ngraph g0\nvertex 0 a\n"), ParseError);
    try {
        parseDerivation("derivation\ngraph g0\nend\npremise g0\nconclusion g0\nstep 1 cut premise=g0 conclusion=g0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
    }
}
