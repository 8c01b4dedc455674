#include "gs/inference.hpp"
#include "gs/modular.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

namespace gs {

namespace {

struct RuleNames {
    Rule rule;
    const char* ascii;
    const char* pretty;
};

constexpr RuleNames kNames[] = {
    {Rule::AiDown, "ai_down", "ai↓"}, {Rule::SsDown, "ss_down", "ss↓"}, {Rule::PDown, "p_down", "p↓"},
    {Rule::AiUp, "ai_up", "ai↑"},     {Rule::SsUp, "ss_up", "ss↑"},     {Rule::PUp, "p_up", "p↑"},
    {Rule::IDown, "i_down", "i↓"},    {Rule::IUp, "i_up", "i↑"},        {Rule::Sw, "sw", "sw"},
    {Rule::GDown, "g_down", "g↓"},    {Rule::GUp, "g_up", "g↑"},        {Rule::Iso, "iso", "iso"},
};

Mask bit(int i) { return Mask{1} << i; }

// all pairs between a and b adjacent (edge) or all non-adjacent (!edge)
bool uniform(const Graph& g, Mask a, Mask b, bool edge) {
    for (Mask r = a; r; r &= r - 1) {
        Mask row = g.row(std::countr_zero(r)) & b;
        if (edge ? row != b : row != 0) return false;
    }
    return true;
}

Graph withoutVertices(const Graph& g, Mask m) { return removeVertices(g, m); }

class StepChecker {
public:
    explicit StepChecker(const ProofStep& s) : s_(s) {}

    std::string run() {
        try {
            return dispatch();
        } catch (const std::exception& e) {
            return e.what();
        }
    }

private:
    const ProofStep& s_;
    const StepParams& p() const { return s_.params; }

    Mask set(const Graph& g, const std::vector<VertexId>& ids, const char* what) const {
        Mask m = g.maskOf(ids);
        if (static_cast<std::size_t>(std::popcount(m)) != ids.size())
            throw std::invalid_argument(std::string(what) + " lists a vertex twice");
        return m;
    }

    std::string expectPosition(const Graph& g, Mask m) const {
        std::vector<VertexId> pos = s_.position;
        std::sort(pos.begin(), pos.end());
        if (pos != g.idsOf(m)) return "position does not match the rewritten vertices";
        return {};
    }

    std::string dispatch() {
        switch (s_.rule) {
            case Rule::AiDown: return atomic(false);
            case Rule::AiUp: return atomic(true);
            case Rule::SsDown: return ssDown();
            case Rule::SsUp: return ssUp();
            case Rule::Sw: return sw();
            case Rule::IDown: return identity(false);
            case Rule::IUp: return identity(true);
            case Rule::PDown: return composite(false, true);
            case Rule::PUp: return composite(true, true);
            case Rule::GDown: return composite(false, false);
            case Rule::GUp: return composite(true, false);
            case Rule::Iso:
                if (!checkIsomorphism(s_.premise, s_.conclusion, p().map)) return "map is not an isomorphism";
                return {};
        }
        return "unknown rule";
    }

    // ai↓: conclusion has the non-adjacent dual pair; ai↑: premise has the adjacent pair
    std::string atomic(bool up) {
        const Graph& big = up ? s_.premise : s_.conclusion;
        const Graph& small = up ? s_.conclusion : s_.premise;
        int i = big.indexOf(p().v), j = big.indexOf(p().w);
        if (i < 0 || j < 0 || i == j) return "v and w must be two vertices of the " + std::string(up ? "premise" : "conclusion");
        if (big.label(i) != big.label(j).negated()) return "labels of v and w are not dual";
        if (big.adjacent(i, j) != up) return up ? "v and w are not adjacent" : "v and w are adjacent";
        Mask m = bit(i) | bit(j);
        if (!isModule(big, m)) return "{v,w} is not a module";
        if (auto e = expectPosition(big, m); !e.empty()) return e;
        if (withoutVertices(big, m) != small) return std::string(up ? "conclusion" : "premise") + " is not the graph with v,w removed";
        return {};
    }

    std::string ssDown() {
        const Graph& c = s_.conclusion;
        Mask a = set(c, p().a, "A"), b = set(c, p().b, "B"), s = set(c, p().s, "S");
        if (!a) return "A is empty";
        if (!b) return "B is empty";
        if (a & b) return "A and B overlap";
        if (!s) return "S is empty";
        if (s & ~b) return "S is not a subset of B";
        if (!isModule(c, a | b)) return "A u B is not a module of the conclusion";
        if (!uniform(c, a, b, false)) return "the conclusion has edges between A and B";
        if (auto e = expectPosition(c, a | b); !e.empty()) return e;
        if (addEdges(c, a, s) != s_.premise) return "premise is not the conclusion with A joined to S";
        return {};
    }

    std::string ssUp() {
        const Graph& pr = s_.premise;
        Mask a = set(pr, p().a, "A"), b = set(pr, p().b, "B"), s = set(pr, p().s, "S");
        if (!a) return "A is empty";
        if (a & b) return "A and B overlap";
        if (s & ~b) return "S is not a subset of B";
        if (s == b) return "S equals B";
        if (!isModule(pr, a | b)) return "A u B is not a module of the premise";
        if (!uniform(pr, a, b, true)) return "A and B are not fully joined in the premise";
        if (auto e = expectPosition(pr, a | b); !e.empty()) return e;
        if (removeEdges(pr, a, b & ~s) != s_.conclusion) return "conclusion is not the premise with A cut from B\\S";
        return {};
    }

    std::string sw() {
        const Graph& c = s_.conclusion;
        Mask a = set(c, p().a, "A"), b = set(c, p().b, "B"), cc = set(c, p().s, "C");
        if (!a || !cc) return "A and C must be non-empty";
        if ((a & b) || (a & cc) || (b & cc)) return "A, B, C overlap";
        if (!isModule(c, a | b | cc)) return "A u B u C is not a module";
        if (!uniform(c, a, b | cc, false)) return "A is adjacent to B or C";
        if (!uniform(c, b, cc, true)) return "B and C are not fully joined";
        if (auto e = expectPosition(c, a | b | cc); !e.empty()) return e;
        if (addEdges(c, a, cc) != s_.premise) return "premise is not (A|B)*C";
        return {};
    }

    std::string identity(bool up) {
        const Graph& big = up ? s_.premise : s_.conclusion;
        const Graph& small = up ? s_.conclusion : s_.premise;
        Mask u = set(big, p().a, "U"), w = set(big, p().b, "W");
        if (!u) return "U is empty";
        if (u & w) return "U and W overlap";
        if (p().map.size() != p().a.size() || p().a.size() != p().b.size()) return "map is not a bijection U -> W";
        std::vector<std::pair<int, int>> pairs;
        Mask hit = 0;
        for (auto [x, y] : p().map) {
            int i = big.indexOf(x), j = big.indexOf(y);
            if (i < 0 || j < 0 || !((u >> i) & 1u) || !((w >> j) & 1u) || ((hit >> j) & 1u))
                return "map is not a bijection U -> W";
            hit |= bit(j);
            if (big.label(i) != big.label(j).negated()) return "map does not negate labels";
            pairs.emplace_back(i, j);
        }
        for (auto [i, j] : pairs)
            for (auto [k, l] : pairs)
                if (i < k && big.adjacent(i, k) == big.adjacent(j, l)) return "U is not the dual of W under map";
        if (!uniform(big, u, w, up)) return up ? "U and W are not fully joined" : "U and W are adjacent";
        if (!isModule(big, u | w)) return "U u W is not a module";
        if (auto e = expectPosition(big, u | w); !e.empty()) return e;
        if (withoutVertices(big, u | w) != small) return "the other graph is not obtained by removing U u W";
        return {};
    }

    // p↓/p↑ (prime quotient, one side all non-empty) and g↓/g↑ (any quotient)
    std::string composite(bool up, bool prime) {
        const Graph& big = up ? s_.premise : s_.conclusion;
        const Graph& q = p().quotient;
        std::size_t n = q.size();
        if (p().ms.size() != n || p().ns.size() != n) return "slot count differs from the quotient size";
        if (prime) {
            if (n < 4) return "quotient has fewer than 4 vertices";
            if (!isPrime(q)) return "quotient is not prime";
        } else if (n == 0) {
            return "empty quotient";
        }
        std::vector<Mask> ms, ns;
        Mask x = 0, y = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ms.push_back(set(big, p().ms[i], "M slot"));
            ns.push_back(set(big, p().ns[i], "N slot"));
            if (((x | y) & (ms.back() | ns.back())) || (ms.back() & ns.back())) return "slots overlap";
            x |= ms.back();
            y |= ns.back();
        }
        if (prime) {
            bool allM = std::all_of(ms.begin(), ms.end(), [](Mask m) { return m != 0; });
            bool allN = std::all_of(ns.begin(), ns.end(), [](Mask m) { return m != 0; });
            if (!allM && !allN) return "neither side has all slots non-empty";
            if ((p().side == 'M' && !allM) || (p().side == 'N' && !allN)) return "recorded side has an empty slot";
        }
        if (!isModule(big, x | y)) return "the rewritten vertices do not form a module";
        if (!uniform(big, x, y, up)) return up ? "the two halves are not fully joined" : "the two halves are adjacent";
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                if (!uniform(big, ms[i], ms[j], q.adjacent(i, j))) return "M slots do not follow the quotient";
                if (!uniform(big, ns[i], ns[j], !q.adjacent(i, j))) return "N slots do not follow the dual quotient";
            }
        if (auto e = expectPosition(big, x | y); !e.empty()) return e;
        Graph expected = big;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                expected = up ? removeEdges(expected, ms[i] | ns[i], ms[j] | ns[j])
                              : addEdges(expected, ms[i] | ns[i], ms[j] | ns[j]);
        if (expected != (up ? s_.conclusion : s_.premise))
            return up ? "conclusion is not the slot-wise tensor split" : "premise is not the tensor of the slots";
        return {};
    }
};

ProofStep makeStep(Rule r, const Graph& premise, const Graph& conclusion, Mask pos, const Graph& posGraph,
                   StepParams params) {
    ProofStep s;
    s.rule = r;
    s.premise = premise;
    s.conclusion = conclusion;
    s.position = posGraph.idsOf(pos);
    s.params = std::move(params);
    return s;
}

// keeps the first step per canonical premise
std::vector<ProofStep> dedupe(std::vector<ProofStep> steps) {
    std::set<std::string> seen;
    std::vector<ProofStep> out;
    for (auto& s : steps)
        if (seen.insert(canonicalForm(s.premise)).second) out.push_back(std::move(s));
    return out;
}

void collectNodes(const MDTree& t, const MDTree* parent, std::vector<std::pair<const MDTree*, const MDTree*>>& out) {
    out.emplace_back(&t, parent);
    for (auto& c : t.children) collectNodes(c, &t, out);
}

std::vector<std::pair<const MDTree*, const MDTree*>> nodesOf(const MDTree& t) {
    std::vector<std::pair<const MDTree*, const MDTree*>> out;
    collectNodes(t, nullptr, out);
    return out;
}

Graph placeholderQuotient(const Graph& q) { return relabel(q, Atom()); }

// Slot assignments of the vertices in y making g[y] = dual(q)<N1..Nn>, possibly with empty slots.
void assignSlots(const Graph& g, const Graph& q, const std::vector<int>& yv, std::size_t k, std::vector<int>& slot,
                 const std::function<void()>& emit) {
    if (k == yv.size()) {
        emit();
        return;
    }
    for (int s = 0; s < static_cast<int>(q.size()); ++s) {
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            if (slot[j] == s) continue;
            if (g.adjacent(yv[k], yv[j]) == q.adjacent(s, slot[j])) ok = false;
        }
        if (!ok) continue;
        slot[k] = s;
        assignSlots(g, q, yv, k + 1, slot, emit);
    }
}

}  // namespace

std::string ruleName(Rule r) {
    for (auto& n : kNames)
        if (n.rule == r) return n.ascii;
    return "?";
}

std::string rulePretty(Rule r) {
    for (auto& n : kNames)
        if (n.rule == r) return n.pretty;
    return "?";
}

std::optional<Rule> parseRule(std::string_view s) {
    for (auto& n : kNames)
        if (s == n.ascii || s == n.pretty) return n.rule;
    return std::nullopt;
}

std::string RuleSet::str() const {
    std::string out = "{";
    bool first = true;
    for (auto& n : kNames)
        if (contains(n.rule)) {
            out += (first ? "" : ",") + std::string(n.ascii);
            first = false;
        }
    return out + "}";
}

std::size_t Derivation::length() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const ProofStep& s) { return s.rule != Rule::Iso; }));
}

std::string checkStep(const ProofStep& step, RuleSet rules) {
    if (!rules.contains(step.rule)) return "rule " + ruleName(step.rule) + " is not in " + rules.str();
    return StepChecker(step).run();
}

CheckResult checkDerivation(const Derivation& d, RuleSet rules) {
    CheckResult r;
    if (d.steps.empty()) {
        if (d.premise != d.conclusion) return {false, 0, "empty derivation with premise different from conclusion"};
        return r;
    }
    if (d.steps.front().premise != d.premise) return {false, 1, "first step does not start at the premise"};
    if (d.steps.back().conclusion != d.conclusion) return {false, d.steps.size(), "last step does not end at the conclusion"};
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        if (k > 0 && d.steps[k].premise != d.steps[k - 1].conclusion)
            return {false, k + 1, "premise differs from the previous conclusion"};
        if (auto e = checkStep(d.steps[k], rules); !e.empty()) return {false, k + 1, e};
    }
    return r;
}

// ---------------------------------------------------------------- enumeration

std::vector<ProofStep> premisesAiDown(const Graph& g) {
    std::vector<ProofStep> out;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (g.adjacent(i, j) || g.label(i) != g.label(j).negated()) continue;
            Mask m = bit(i) | bit(j);
            if (!isModule(g, m)) continue;
            StepParams p;
            p.v = g.id(i);
            p.w = g.id(j);
            out.push_back(makeStep(Rule::AiDown, removeVertices(g, m), g, m, g, p));
        }
    return out;
}

namespace {

ProofStep ssDownStep(const Graph& g, Mask a, Mask b, Mask s) {
    StepParams p;
    p.a = g.idsOf(a);
    p.b = g.idsOf(b);
    p.s = g.idsOf(s);
    return makeStep(Rule::SsDown, addEdges(g, a, s), g, a | b, g, std::move(p));
}

}  // namespace

std::vector<ProofStep> premisesSsDown(const Graph& g, std::size_t limit) {
    if (g.size() > limit) throw LimitError("premisesSsDown: graph exceeds " + std::to_string(limit) + " vertices");
    std::vector<ProofStep> out;
    if (g.empty()) return out;
    MDTree t = decompose(g);
    for (auto [node, parent] : nodesOf(t)) {
        if (node->kind != MDTree::Kind::Par) continue;
        std::size_t k = node->children.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            Mask a = 0, b = 0;
            std::size_t c = code;
            for (std::size_t i = 0; i < k; ++i, c /= 3) {
                if (c % 3 == 1) a |= node->children[i].vertices;
                if (c % 3 == 2) b |= node->children[i].vertices;
            }
            if (!a || !b) continue;
            for (Mask s = b; s; s = (s - 1) & b) out.push_back(ssDownStep(g, a, b, s));
        }
    }
    return dedupe(std::move(out));
}

std::vector<ProofStep> premisesSsDownReduced(const Graph& g) {
    std::vector<ProofStep> out;
    if (g.empty()) return out;
    MDTree t = decompose(g);
    for (auto [node, parent] : nodesOf(t)) {
        if (node->kind != MDTree::Kind::Par) continue;
        std::size_t k = node->children.size();
        for (std::size_t ai = 0; ai < k; ++ai) {
            Mask a = node->children[ai].vertices;
            std::vector<Mask> others;
            for (std::size_t i = 0; i < k; ++i)
                if (i != ai) others.push_back(node->children[i].vertices);
            for (Mask pick = 1; pick < (Mask{1} << others.size()); ++pick) {
                Mask b = 0;
                std::vector<Mask> parts;
                for (std::size_t i = 0; i < others.size(); ++i)
                    if ((pick >> i) & 1u) {
                        b |= others[i];
                        parts.push_back(others[i]);
                    }
                // S meets every chosen child
                std::function<void(std::size_t, Mask)> rec = [&](std::size_t i, Mask s) {
                    if (i == parts.size()) {
                        out.push_back(ssDownStep(g, a, b, s));
                        return;
                    }
                    for (Mask sub = parts[i]; sub; sub = (sub - 1) & parts[i]) rec(i + 1, s | sub);
                };
                rec(0, 0);
            }
        }
    }
    return out;
}

std::vector<ProofStep> premisesPDown(const Graph& g, std::size_t limit) {
    if (g.size() > limit) throw LimitError("premisesPDown: graph exceeds " + std::to_string(limit) + " vertices");
    std::vector<ProofStep> out;
    if (g.empty()) return out;
    MDTree t = decompose(g);
    for (auto [node, parent] : nodesOf(t)) {
        if (node->kind != MDTree::Kind::Prime) continue;
        const Graph& q = node->quotient;
        std::size_t n = q.size();
        std::vector<Mask> siblings;
        if (parent && parent->kind == MDTree::Kind::Par)
            for (auto& c : parent->children)
                if (&c != node) siblings.push_back(c.vertices);
        for (Mask pick = 0; pick < (Mask{1} << siblings.size()); ++pick) {
            Mask y = 0;
            for (std::size_t i = 0; i < siblings.size(); ++i)
                if ((pick >> i) & 1u) y |= siblings[i];
            std::vector<int> yv;
            for (Mask r = y; r; r &= r - 1) yv.push_back(std::countr_zero(r));
            std::vector<int> slot(yv.size(), -1);
            assignSlots(g, q, yv, 0, slot, [&] {
                StepParams p;
                p.quotient = placeholderQuotient(q);
                std::vector<Mask> ns(n, 0), all(n, 0);
                for (std::size_t k = 0; k < yv.size(); ++k) ns[slot[k]] |= bit(yv[k]);
                for (std::size_t i = 0; i < n; ++i) {
                    p.ms.push_back(g.idsOf(node->children[i].vertices));
                    p.ns.push_back(g.idsOf(ns[i]));
                    all[i] = node->children[i].vertices | ns[i];
                }
                p.side = 'M';
                Graph premise = g;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j) premise = addEdges(premise, all[i], all[j]);
                out.push_back(makeStep(Rule::PDown, premise, g, node->vertices | y, g, std::move(p)));
            });
        }
    }
    return dedupe(std::move(out));
}

std::vector<ProofStep> premisesGDown(const Graph& g, std::size_t limit) {
    if (g.size() > limit) throw LimitError("premisesGDown: graph exceeds " + std::to_string(limit) + " vertices");
    std::vector<ProofStep> out;
    for (Mask n : enumerateModules(g, limit)) {
        if (std::popcount(n) < 2) continue;
        auto comps = components(g, n);
        // every split of the components of g[n] into the two halves
        for (Mask pick = 0; pick < (Mask{1} << comps.size()); ++pick) {
            Mask x = 0;
            for (std::size_t i = 0; i < comps.size(); ++i)
                if ((pick >> i) & 1u) x |= comps[i];
            std::vector<int> vs;
            for (Mask r = n; r; r &= r - 1) vs.push_back(std::countr_zero(r));
            // set partitions of n as restricted growth strings
            std::vector<int> block(vs.size(), 0);
            std::function<void(std::size_t, int)> rec = [&](std::size_t k, int used) {
                if (k == vs.size()) {
                    if (used < 2) return;
                    std::vector<Mask> ms(used, 0), ns(used, 0);
                    for (std::size_t i = 0; i < vs.size(); ++i) ((x >> vs[i]) & 1u ? ms : ns)[block[i]] |= bit(vs[i]);
                    std::vector<Mask> adj(used, 0);
                    for (int i = 0; i < used; ++i)
                        for (int j = i + 1; j < used; ++j) {
                            int e = -1;
                            if (ms[i] && ms[j]) {
                                if (uniform(g, ms[i], ms[j], true)) e = 1;
                                else if (uniform(g, ms[i], ms[j], false)) e = 0;
                                else return;
                            }
                            if (ns[i] && ns[j]) {
                                int f;
                                if (uniform(g, ns[i], ns[j], false)) f = 1;
                                else if (uniform(g, ns[i], ns[j], true)) f = 0;
                                else return;
                                if (e >= 0 && e != f) return;
                                e = f;
                            }
                            if (e == 1) {
                                adj[i] |= bit(j);
                                adj[j] |= bit(i);
                            }
                        }
                    Graph premise = g;
                    for (int i = 0; i < used; ++i)
                        for (int j = i + 1; j < used; ++j) premise = addEdges(premise, ms[i] | ns[i], ms[j] | ns[j]);
                    if (premise == g) return;
                    StepParams p;
                    std::vector<VertexId> qids;
                    for (int i = 0; i < used; ++i) qids.push_back(static_cast<VertexId>(i));
                    p.quotient = Graph::fromParts(qids, std::vector<Atom>(used), adj);
                    for (int i = 0; i < used; ++i) {
                        p.ms.push_back(g.idsOf(ms[i]));
                        p.ns.push_back(g.idsOf(ns[i]));
                    }
                    out.push_back(makeStep(Rule::GDown, premise, g, n, g, std::move(p)));
                    return;
                }
                for (int b = 0; b <= used && b < static_cast<int>(vs.size()); ++b) {
                    block[k] = b;
                    rec(k + 1, std::max(used, b + 1));
                }
            };
            rec(0, 0);
        }
    }
    return dedupe(std::move(out));
}

std::vector<ProofStep> premisesSsUp(const Graph& g, std::size_t limit) {
    std::vector<ProofStep> out;
    auto mods = enumerateModules(g, limit);
    for (Mask n : mods)
        for (Mask a : mods) {
            if (!a || (a & ~n) || a == n) continue;
            Mask b = n & ~a;
            Graph premise = addEdges(g, a, b);
            if (premise == g) continue;
            StepParams p;
            p.a = g.idsOf(a);
            p.b = g.idsOf(b);
            p.s = g.idsOf(neighbourhood(g, a) & b);
            out.push_back(makeStep(Rule::SsUp, premise, g, n, g, std::move(p)));
        }
    return dedupe(std::move(out));
}

// ---------------------------------------------------------------- up rules

ProofStep dualStep(const ProofStep& s) {
    ProofStep d;
    d.premise = dual(s.conclusion);
    d.conclusion = dual(s.premise);
    d.position = s.position;
    d.params = s.params;
    switch (s.rule) {
        case Rule::AiDown: d.rule = Rule::AiUp; break;
        case Rule::AiUp: d.rule = Rule::AiDown; break;
        case Rule::IDown: d.rule = Rule::IUp; break;
        case Rule::IUp: d.rule = Rule::IDown; break;
        case Rule::PDown: d.rule = Rule::PUp; break;
        case Rule::PUp: d.rule = Rule::PDown; break;
        case Rule::GDown: d.rule = Rule::GUp; break;
        case Rule::GUp: d.rule = Rule::GDown; break;
        case Rule::Iso: {
            d.rule = Rule::Iso;
            Bijection inv;
            for (auto [x, y] : s.params.map) inv[y] = x;
            d.params.map = inv;
            break;
        }
        case Rule::SsDown:
        case Rule::SsUp: {
            // the kept part of B flips: ss↓ joins A to S, the dual ss↑ keeps the join to B\S
            d.rule = s.rule == Rule::SsDown ? Rule::SsUp : Rule::SsDown;
            std::set<VertexId> sset(s.params.s.begin(), s.params.s.end());
            d.params.s.clear();
            for (VertexId v : s.params.b)
                if (!sset.count(v)) d.params.s.push_back(v);
            break;
        }
        case Rule::Sw: throw std::invalid_argument("dualStep: sw has no dual rule in this system");
    }
    if (s.rule == Rule::PDown || s.rule == Rule::PUp || s.rule == Rule::GDown || s.rule == Rule::GUp)
        d.params.quotient = placeholderQuotient(dual(s.params.quotient));
    return d;
}

std::vector<ProofStep> upInstances(const Graph& g, Rule rule) {
    std::vector<ProofStep> down;
    Graph dg = dual(g);
    switch (rule) {
        case Rule::AiUp: down = premisesAiDown(dg); break;
        case Rule::SsUp: down = premisesSsDown(dg); break;
        case Rule::PUp: down = premisesPDown(dg); break;
        default: throw std::invalid_argument("upInstances: not an up rule");
    }
    std::vector<ProofStep> out;
    for (auto& s : down) out.push_back(dualStep(s));
    return out;
}

Graph applyUpRule(const Graph& g, Rule rule, const StepParams& params) {
    ProofStep s;
    s.rule = rule;
    s.premise = g;
    s.params = params;
    auto mask = [&](const std::vector<VertexId>& ids) { return g.maskOf(ids); };
    try {
        switch (rule) {
            case Rule::AiUp: {
                Mask m = mask({params.v, params.w});
                s.conclusion = removeVertices(g, m);
                s.position = g.idsOf(m);
                break;
            }
            case Rule::SsUp: {
                Mask a = mask(params.a), b = mask(params.b), st = mask(params.s);
                s.conclusion = removeEdges(g, a, b & ~st);
                s.position = g.idsOf(a | b);
                break;
            }
            case Rule::PUp: {
                Mask all = 0;
                std::vector<Mask> slots;
                for (std::size_t i = 0; i < params.ms.size() && i < params.ns.size(); ++i) {
                    slots.push_back(mask(params.ms[i]) | mask(params.ns[i]));
                    all |= slots.back();
                }
                s.conclusion = g;
                for (std::size_t i = 0; i < slots.size(); ++i)
                    for (std::size_t j = i + 1; j < slots.size(); ++j)
                        s.conclusion = removeEdges(s.conclusion, slots[i], slots[j]);
                s.position = g.idsOf(all);
                break;
            }
            default: throw std::invalid_argument("applyUpRule: " + ruleName(rule) + " is not ai_up, ss_up or p_up");
        }
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("applyUpRule: ") + e.what());
    }
    if (auto e = checkStep(s); !e.empty()) throw std::invalid_argument("applyUpRule: invalid redex: " + e);
    return s.conclusion;
}

}  // namespace gs
