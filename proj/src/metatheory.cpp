#include "gs/metatheory.hpp"

#include "gs/modular.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gs {

namespace {

constexpr const char* kPlaceholderAtom = "_hole";
constexpr const char* kProbeAtom = "_probe";

// Breadth-first walk over the premises of g; each node remembers the step to its parent.
class Closure {
public:
    Closure(const Graph& goal, const MetaConfig& cfg) : cfg_(cfg) {
        if (goal.size() > cfg.vertexLimit)
            throw LimitError("upward closure of " + std::to_string(goal.size()) + " vertices, limit is " +
                             std::to_string(cfg.vertexLimit));
        nodes_.push_back({goal, -1, {}});
        seen_.insert(canonicalForm(goal));
    }

    // Calls f on the nodes in breadth-first order until it returns true.
    // Nodes expanded by an earlier scan are not expanded again.
    bool scan(const std::function<bool(std::size_t)>& f) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (f(i)) return true;
            if (i == expanded_) {
                expand(i);
                ++expanded_;
            }
        }
        return false;
    }

    const Graph& graph(std::size_t i) const { return nodes_[i].graph; }
    std::size_t size() const { return nodes_.size(); }

    Derivation toGoal(std::size_t i) const {
        Derivation d = emptyDerivation(nodes_[i].graph);
        for (long k = static_cast<long>(i); nodes_[k].parent >= 0; k = nodes_[k].parent) {
            d.steps.push_back(nodes_[k].step);
            d.conclusion = nodes_[k].step.conclusion;
        }
        return d;
    }

private:
    struct Node {
        Graph graph;
        long parent;
        ProofStep step;   // graph -> nodes_[parent].graph
    };
    const MetaConfig& cfg_;
    std::vector<Node> nodes_;
    std::set<std::string> seen_;
    std::size_t expanded_ = 0;

    void expand(std::size_t i) {
        const Graph g = nodes_[i].graph;
        std::vector<ProofStep> steps = premisesAiDown(g);
        auto add = [&](std::vector<ProofStep> more) {
            for (auto& s : more) steps.push_back(std::move(s));
        };
        add(cfg_.prover.reducedSwitch ? premisesSsDownReduced(g) : premisesSsDown(g));
        add(premisesPDown(g));
        for (ProofStep& s : steps) {
            if (!seen_.insert(canonicalForm(s.premise)).second) continue;
            if (nodes_.size() >= cfg_.closureLimit)
                throw LimitError("upward closure exceeds " + std::to_string(cfg_.closureLimit) + " graphs");
            Graph premise = s.premise;
            nodes_.push_back({std::move(premise), static_cast<long>(i), std::move(s)});
        }
    }
};

Mask allOf(const Graph& g) { return g.all(); }

std::vector<VertexId> unionIds(std::vector<VertexId> a, const std::vector<VertexId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

// Moves graphs onto fresh ids starting at next.
Graph shiftPast(const Graph& g, VertexId& next) {
    Bijection r;
    for (VertexId v : g.ids()) r[v] = next++;
    return renameVertices(g, r);
}

ProofStep ssStep(const Graph& conclusion, const std::vector<VertexId>& a, const std::vector<VertexId>& b,
                 const std::vector<VertexId>& s) {
    ProofStep st;
    st.rule = Rule::SsDown;
    st.conclusion = conclusion;
    st.premise = addEdges(conclusion, conclusion.maskOf(a), conclusion.maskOf(s));
    st.position = unionIds(a, b);
    st.params.a = a;
    st.params.b = b;
    st.params.s = s;
    return st;
}

Derivation single(ProofStep st) {
    Derivation d;
    d.premise = st.premise;
    d.conclusion = st.conclusion;
    d.steps.push_back(std::move(st));
    return d;
}

// Prepends a step to d when it changes something.
Derivation stepThen(ProofStep st, const Derivation& d) {
    if (st.params.a.empty() || st.params.s.empty()) return d;
    return compose(single(std::move(st)), d);
}

class Searcher {
public:
    explicit Searcher(const MetaConfig& cfg) : cfg_(cfg), prover_(cfg.prover) {}

    std::optional<Derivation> proof(const Graph& g) {
        if (g.empty()) return emptyDerivation(g);
        return prover_.prove(g);
    }
    bool provable(const Graph& g) { return g.empty() || prover_.provable(g); }

    // Pieces K_1..K_n in a par-module of some closure graph, with K_i | factors[i] provable.
    std::optional<SplitWitness> multiTensor(const Graph& g, const std::vector<Graph>& factors) {
        std::optional<SplitWitness> out;
        Closure cl(g, cfg_);
        cl.scan([&](std::size_t idx) {
            const Graph& x = cl.graph(idx);
            for (Mask m : moduleCandidates(x)) {
                Graph host = removeVertices(x, m);
                if (!provable(host)) continue;
                std::vector<Mask> comps = m ? components(x, m) : std::vector<Mask>{};
                std::vector<Mask> groups(factors.size(), 0);
                if (assignComponents(x, comps, 0, factors, groups)) {
                    SplitWitness w;
                    w.kind = factors.size() == 2 ? WitnessKind::Tensor : WitnessKind::MultiTensor;
                    fillContext(w, cl, idx, m);
                    for (std::size_t i = 0; i < factors.size(); ++i) {
                        Graph k = induced(x, groups[i]);
                        w.pieces.push_back({pieceName(factors.size(), i), k});
                        w.partners.push_back(factors[i]);
                        w.pieceProofs.push_back(*proof(parKeep(k, factors[i])));
                    }
                    out = std::move(w);
                    return true;
                }
            }
            return false;
        });
        return out;
    }

    std::optional<SplitWitness> prime(const Graph& g, const Graph& p, const std::vector<Graph>& ms) {
        std::optional<SplitWitness> out;
        Graph dp = dual(p);
        Closure cl(g, cfg_);
        cl.scan([&](std::size_t idx) {
            const Graph& x = cl.graph(idx);
            std::vector<Mask> mods = moduleCandidates(x);
            // case A: the module is dual(p)<K_1..K_n>
            for (Mask m : mods) {
                Graph host = removeVertices(x, m);
                if (!provable(host)) continue;
                std::vector<int> slotOf(x.size(), -1);
                std::vector<Mask> ks(p.size(), 0);
                if (assignSlots(x, m, dp, ms, 0, slotOf, ks)) {
                    SplitWitness w;
                    w.kind = WitnessKind::PrimeA;
                    fillContext(w, cl, idx, m);
                    for (std::size_t i = 0; i < p.size(); ++i) {
                        Graph k = induced(x, ks[i]);
                        w.pieces.push_back({"K" + std::to_string(i + 1), k});
                        w.partners.push_back(ms[i]);
                        w.pieceProofs.push_back(*proof(parKeep(k, ms[i])));
                    }
                    out = std::move(w);
                    return true;
                }
            }
            return false;
        });
        if (out) return out;
        // case B only when no graph of the closure admits case A
        cl.scan([&](std::size_t idx) {
            const Graph& x = cl.graph(idx);
            std::vector<Mask> mods = moduleCandidates(x);
            // case B: the module is K_X | K_Y
            for (Mask m : mods) {
                Graph host = removeVertices(x, m);
                if (!provable(host)) continue;
                std::vector<Mask> comps = m ? components(x, m) : std::vector<Mask>{};
                if (comps.size() > 16) continue;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    std::vector<Graph> rest = ms;
                    rest[i] = Graph();
                    Graph reduced = composeVia(p, rest);
                    for (unsigned sel = 0; sel < (1u << comps.size()); ++sel) {
                        Mask kx = 0;
                        for (std::size_t c = 0; c < comps.size(); ++c)
                            if ((sel >> c) & 1u) kx |= comps[c];
                        Graph gx = induced(x, kx), gy = induced(x, m & ~kx);
                        if (!provable(parKeep(gx, ms[i]))) continue;
                        Graph yGoal = par(gy, reduced);
                        if (!provable(yGoal)) continue;
                        SplitWitness w;
                        w.kind = WitnessKind::PrimeB;
                        w.slot = i;
                        fillContext(w, cl, idx, m);
                        w.pieces = {{"KX", gx}, {"KY", gy}};
                        w.partners = {ms[i], Graph()};   // the second partner is set by the caller
                        w.pieceProofs = {*proof(parKeep(gx, ms[i]))};
                        out = std::move(w);
                        return true;
                    }
                }
            }
            return false;
        });
        return out;
    }

    std::optional<SplitWitness> atomic(const Graph& g, Atom a) {
        std::optional<SplitWitness> out;
        Closure cl(g, cfg_);
        cl.scan([&](std::size_t idx) {
            const Graph& x = cl.graph(idx);
            for (std::size_t v = 0; v < x.size(); ++v) {
                if (x.label(v) != a.negated()) continue;
                Mask m = Mask{1} << v;
                if (!provable(removeVertices(x, m))) continue;
                SplitWitness w;
                w.kind = WitnessKind::Atomic;
                fillContext(w, cl, idx, m);
                w.pieces = {{"K", w.hole}};
                out = std::move(w);
                return true;
            }
            return false;
        });
        return out;
    }

    // g contains the placeholder vertex ph standing for the selected module.
    std::optional<SplitWitness> contextReduction(const Graph& g, VertexId ph, const Graph& a,
                                                 const std::function<bool(const SplitWitness&)>& uniform) {
        std::optional<SplitWitness> out;
        Closure cl(g, cfg_);
        cl.scan([&](std::size_t idx) {
            const Graph& x = cl.graph(idx);
            int hi = x.indexOf(ph);
            if (hi < 0) return false;
            Mask hb = Mask{1} << hi;
            for (Mask m : moduleCandidates(x)) {
                if (!(m & hb) || (x.row(hi) & m)) continue;   // the placeholder must be par-attached to K
                Graph k = induced(x, m & ~hb);
                if (!provable(parKeep(k, a))) continue;
                if (!provable(removeVertices(x, m))) continue;
                SplitWitness w;
                w.kind = WitnessKind::ContextReduction;
                w.placeholder = ph;
                fillContext(w, cl, idx, m);
                w.pieces = {{"K", k}};
                w.partners = {a};
                w.pieceProofs = {*proof(parKeep(k, a))};
                if (!uniform(w)) continue;
                out = std::move(w);
                return true;
            }
            return false;
        });
        return out;
    }

private:
    const MetaConfig& cfg_;
    Prover prover_;

    static std::string pieceName(std::size_t n, std::size_t i) {
        if (n == 2) return i == 0 ? "KA" : "KB";
        return "K" + std::to_string(i + 1);
    }

    // the empty set first, then every non-empty module in increasing mask order
    static std::vector<Mask> moduleCandidates(const Graph& x) {
        std::vector<Mask> out{0};
        for (Mask m = 1; m <= allOf(x) && m != 0; ++m)
            if (isModule(x, m)) out.push_back(m);
        return out;
    }

    bool assignComponents(const Graph& x, const std::vector<Mask>& comps, std::size_t c,
                          const std::vector<Graph>& factors, std::vector<Mask>& groups) {
        if (c == comps.size()) {
            for (std::size_t i = 0; i < factors.size(); ++i)
                if (!provable(parKeep(induced(x, groups[i]), factors[i]))) return false;
            return true;
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            groups[i] |= comps[c];
            if (assignComponents(x, comps, c + 1, factors, groups)) return true;
            groups[i] &= ~comps[c];
        }
        return false;
    }

    // Vertices of m go to slots so that x[m] = dp<K_0..K_{n-1}>; every K_i | ms[i] must be provable.
    bool assignSlots(const Graph& x, Mask m, const Graph& dp, const std::vector<Graph>& ms, std::size_t v,
                     std::vector<int>& slotOf, std::vector<Mask>& ks) {
        while (v < x.size() && !((m >> v) & 1u)) ++v;
        if (v == x.size()) {
            for (std::size_t i = 0; i < ks.size(); ++i)
                if (!provable(parKeep(induced(x, ks[i]), ms[i]))) return false;
            return true;
        }
        for (std::size_t s = 0; s < dp.size(); ++s) {
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u) {
                if (slotOf[u] < 0 || static_cast<std::size_t>(slotOf[u]) == s) continue;
                if (x.adjacent(u, v) != dp.adjacent(static_cast<std::size_t>(slotOf[u]), s)) ok = false;
            }
            if (!ok) continue;
            slotOf[v] = static_cast<int>(s);
            ks[s] |= Mask{1} << v;
            if (assignSlots(x, m, dp, ms, v + 1, slotOf, ks)) return true;
            ks[s] &= ~(Mask{1} << v);
            slotOf[v] = -1;
        }
        return false;
    }

    void fillContext(SplitWitness& w, const Closure& cl, std::size_t idx, Mask m) {
        const Graph& x = cl.graph(idx);
        w.context = contextOf(x, m);
        if (!m) w.context.holeNeighbors.clear();
        w.hole = induced(x, m);
        w.contextProof = *proof(w.context.host);
        w.contextDerivation = cl.toGoal(idx);
    }
};

Graph substituteVertex(const Graph& g, VertexId v, const Graph& x) {
    int i = g.indexOf(v);
    if (i < 0) return g;
    Mask bit = Mask{1} << i;
    GraphContext c{removeVertices(g, bit), g.idsOf(g.row(i))};
    return plug(c, x);
}

std::vector<VertexId> substituteIds(const std::vector<VertexId>& ids, VertexId v, const Graph& x) {
    std::vector<VertexId> out;
    for (VertexId u : ids)
        if (u != v) out.push_back(u);
    if (out.size() == ids.size()) return ids;
    return unionIds(out, x.ids());
}

}  // namespace

std::string witnessKindName(WitnessKind k) {
    switch (k) {
        case WitnessKind::Tensor: return "tensor";
        case WitnessKind::MultiTensor: return "multi-tensor";
        case WitnessKind::PrimeA: return "prime (case A)";
        case WitnessKind::PrimeB: return "prime (case B)";
        case WitnessKind::Atomic: return "atomic";
        case WitnessKind::ContextReduction: return "context reduction";
    }
    return "?";
}

std::vector<UpwardEntry> upwardClosure(const Graph& g, const MetaConfig& cfg) {
    Closure cl(g, cfg);
    cl.scan([](std::size_t) { return false; });
    std::vector<UpwardEntry> out;
    for (std::size_t i = 0; i < cl.size(); ++i) out.push_back({cl.graph(i), cl.toGoal(i)});
    return out;
}

std::optional<SplitWitness> multiTensorSplittingWitness(const Graph& g, const std::vector<Graph>& factors,
                                                        const MetaConfig& cfg) {
    if (factors.size() < 2) throw std::invalid_argument("multiTensorSplittingWitness: need at least two factors");
    VertexId next = g.empty() ? 0 : g.maxId() + 1;
    std::vector<Graph> fs;
    Graph principal;
    for (const Graph& f : factors) {
        if (f.empty()) throw std::invalid_argument("multiTensorSplittingWitness: empty factor");
        fs.push_back(shiftPast(f, next));
        principal = principal.empty() ? fs.back() : tensorKeep(principal, fs.back());
    }
    Searcher s(cfg);
    auto w = s.multiTensor(g, fs);
    if (w) {
        w->g = g;
        w->principal = principal;
        w->goal = parKeep(g, principal);
    }
    return w;
}

std::optional<SplitWitness> splittingTensorWitness(const Graph& g, const Graph& a, const Graph& b,
                                                   const MetaConfig& cfg) {
    return multiTensorSplittingWitness(g, {a, b}, cfg);
}

std::optional<SplitWitness> splittingPrimeWitness(const Graph& g, const Graph& p, const std::vector<Graph>& ms,
                                                  const MetaConfig& cfg) {
    if (p.size() != ms.size()) throw std::invalid_argument("splittingPrimeWitness: one module per slot");
    if (!isPrime(p)) throw std::invalid_argument("splittingPrimeWitness: " + describe(p) + " is not prime");
    if (p.size() == 2 && p.edgeCount() == 0) throw std::invalid_argument("splittingPrimeWitness: the par graph");
    if (p.size() == 2) return splittingTensorWitness(g, ms[0], ms[1], cfg);
    VertexId next = g.empty() ? 0 : g.maxId() + 1;
    std::vector<Graph> placed;
    for (const Graph& m : ms) {
        if (m.empty()) throw std::invalid_argument("splittingPrimeWitness: empty module");
        placed.push_back(shiftPast(m, next));
    }
    // composeVia renumbers, so build the principal on the placed ids directly
    Graph principal;
    for (const Graph& m : placed) principal = principal.empty() ? m : parKeep(principal, m);
    for (std::size_t i = 0; i < placed.size(); ++i)
        for (std::size_t j = i + 1; j < placed.size(); ++j)
            if (p.adjacent(i, j))
                principal = addEdges(principal, principal.maskOf(placed[i].ids()), principal.maskOf(placed[j].ids()));
    Searcher s(cfg);
    auto w = s.prime(g, p, placed);
    if (w) {
        w->g = g;
        w->principal = principal;
        w->goal = parKeep(g, principal);
        if (w->kind == WitnessKind::PrimeB) {
            Graph reduced = removeVertices(principal, principal.maskOf(placed[w->slot].ids()));
            Graph ky = w->pieces[1].graph;
            w->partners[1] = reduced;
            auto d = s.proof(parKeep(ky, reduced));
            w->pieceProofs.push_back(*d);
        }
    }
    return w;
}

std::optional<SplitWitness> atomicSplittingWitness(const Graph& g, Atom a, const MetaConfig& cfg) {
    Searcher s(cfg);
    auto w = s.atomic(g, a);
    if (w) {
        VertexId next = g.empty() ? 0 : g.maxId() + 1;
        w->g = g;
        w->principal = singleton(a, next);
        w->goal = parKeep(g, w->principal);
        w->partners = {w->principal};
        w->pieceProofs = {*s.proof(parKeep(w->hole, w->principal))};
    }
    return w;
}

std::vector<Graph> holeProbes(const SplitWitness& w) {
    return {Graph(), singleton(Atom(kProbeAtom)), w.partners.empty() ? Graph() : w.partners.front()};
}

std::optional<Derivation> instantiateHole(const SplitWitness& w, const Graph& x0) {
    const Derivation& d = w.contextDerivation;
    VertexId next = 0;
    for (const Graph* h : {&d.premise, &d.conclusion})
        if (!h->empty()) next = std::max(next, h->maxId() + 1);
    for (const ProofStep& s : d.steps) next = std::max(next, s.premise.empty() ? 0 : s.premise.maxId() + 1);
    if (!w.goal.empty()) next = std::max(next, w.goal.maxId() + 1);
    Graph x = x0;
    bool clash = false;
    for (VertexId v : x.ids()) {
        if (d.premise.contains(v) || d.conclusion.contains(v)) clash = true;
        for (const ProofStep& s : d.steps)
            if (s.premise.contains(v)) clash = true;
    }
    if (clash) x = shiftPast(x0, next);
    const VertexId ph = w.placeholder;
    Derivation out;
    out.premise = substituteVertex(d.premise, ph, x);
    out.conclusion = substituteVertex(d.conclusion, ph, x);
    for (const ProofStep& s : d.steps) {
        if (s.rule == Rule::Iso) return std::nullopt;
        ProofStep t = s;
        t.premise = substituteVertex(s.premise, ph, x);
        t.conclusion = substituteVertex(s.conclusion, ph, x);
        if (t.premise == t.conclusion) continue;
        t.position = substituteIds(s.position, ph, x);
        t.params.a = substituteIds(s.params.a, ph, x);
        t.params.b = substituteIds(s.params.b, ph, x);
        t.params.s = substituteIds(s.params.s, ph, x);
        for (auto& slot : t.params.ms) slot = substituteIds(slot, ph, x);
        for (auto& slot : t.params.ns) slot = substituteIds(slot, ph, x);
        if (!checkStep(t, RuleSet::gs()).empty()) return std::nullopt;
        out.steps.push_back(std::move(t));
    }
    if (!checkDerivation(out, RuleSet::gs())) return std::nullopt;
    return out;
}

std::optional<SplitWitness> contextReductionWitness(const GraphContext& gContext, const Graph& a,
                                                    const MetaConfig& cfg) {
    VertexId next = gContext.host.empty() ? 0 : gContext.host.maxId() + 1;
    const VertexId ph = next++;
    Graph placed = shiftPast(a, next);
    Graph withHole = plug(gContext, singleton(Atom(kPlaceholderAtom), ph));
    Graph goal = plug(gContext, placed);
    Searcher s(cfg);
    auto uniform = [&](const SplitWitness& w0) {
        SplitWitness w = w0;
        w.goal = goal;
        w.partners = {placed};
        for (const Graph& probe : holeProbes(w))
            if (!instantiateHole(w, probe)) return false;
        return true;
    };
    auto w = s.contextReduction(withHole, ph, placed, uniform);
    if (w) {
        w->g = gContext.host;
        w->principal = placed;
        w->goal = goal;
    }
    return w;
}

namespace {

// plug(context, hole) | principal -> g | principal
Derivation lowerPart(const SplitWitness& w) {
    Graph top = parKeep(plug(w.context, w.hole), w.principal);
    Derivation d = liftDerivation(w.contextDerivation, GraphContext{w.principal, {}});
    ProofStep out = ssStep(top, w.principal.ids(), plug(w.context, w.hole).ids(), w.context.holeNeighbors);
    return stepThen(std::move(out), d);
}

// Lifts a proof of a module into the graph `host` where the module is adjacent to nbrs.
Derivation liftProof(const Derivation& proof, const Graph& host, const std::vector<VertexId>& nbrs) {
    return liftDerivation(proof, GraphContext{host, nbrs});
}

}  // namespace

Derivation reassemble(const SplitWitness& w) {
    const GraphContext& c = w.context;
    Derivation d = w.contextProof;
    auto ids = [](const Graph& g) { return g.ids(); };
    switch (w.kind) {
        case WitnessKind::Tensor:
        case WitnessKind::MultiTensor: {
            // build (K1|F1)*...*(Kn|Fn) in the hole, then move each K_j out of the tensor
            Graph inHole;
            for (std::size_t i = 0; i < w.pieces.size(); ++i) {
                Graph host = plug(c, inHole);
                d = compose(d, liftProof(w.pieceProofs[i], host, unionIds(c.holeNeighbors, ids(inHole))));
                inHole = tensorKeep(inHole, parKeep(w.pieces[i].graph, w.partners[i]));
            }
            // bottom-up, K_j is attached next to F_j; top-down these steps run last to first
            Graph remaining;
            for (const auto& p : w.pieces) remaining = parKeep(remaining, p.graph);
            Graph t = w.principal;
            std::vector<ProofStep> ups;
            for (std::size_t j = 0; j < w.pieces.size(); ++j) {
                const Graph& kj = w.pieces[j].graph;
                if (kj.empty()) continue;
                std::vector<VertexId> s;
                for (VertexId v : t.ids())
                    if (!w.partners[j].contains(v)) s.push_back(v);
                ProofStep st = ssStep(plug(c, parKeep(remaining, t)), ids(kj), ids(t), s);
                remaining = removeVertices(remaining, remaining.maskOf(ids(kj)));
                t = induced(st.premise, st.premise.maskOf(unionIds(ids(kj), ids(t))));
                ups.push_back(std::move(st));
            }
            for (auto it = ups.rbegin(); it != ups.rend(); ++it) d = compose(d, single(*it));
            break;
        }
        case WitnessKind::PrimeA: {
            Graph inHole;
            std::vector<VertexId> position;
            for (std::size_t i = 0; i < w.pieces.size(); ++i) {
                Graph host = plug(c, inHole);
                d = compose(d, liftProof(w.pieceProofs[i], host, unionIds(c.holeNeighbors, ids(inHole))));
                inHole = tensorKeep(inHole, parKeep(w.pieces[i].graph, w.partners[i]));
            }
            ProofStep st;
            st.rule = Rule::PDown;
            st.premise = d.conclusion;
            Graph cur = st.premise;
            std::size_t n = w.pieces.size();
            auto mask = [&](const Graph& g) { return cur.maskOf(g.ids()); };
            // the quotient is the principal's prime graph: read it off the partners' adjacency
            std::vector<std::pair<VertexId, Atom>> qv;
            std::vector<std::pair<VertexId, VertexId>> qe;
            for (std::size_t i = 0; i < n; ++i) qv.emplace_back(static_cast<VertexId>(i), Atom());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (w.principal.hasEdge(w.partners[i].id(0), w.partners[j].id(0)))
                        qe.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
            Graph q(qv, qe);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    Mask mi = mask(w.partners[i]), mj = mask(w.partners[j]);
                    Mask ni = mask(w.pieces[i].graph), nj = mask(w.pieces[j].graph);
                    cur = removeEdges(cur, mi, nj);
                    cur = removeEdges(cur, ni, mj);
                    cur = q.adjacent(i, j) ? removeEdges(cur, ni, nj) : removeEdges(cur, mi, mj);
                }
            st.conclusion = cur;
            for (std::size_t i = 0; i < n; ++i) {
                st.params.ms.push_back(ids(w.partners[i]));
                st.params.ns.push_back(ids(w.pieces[i].graph));
                position = unionIds(position, unionIds(ids(w.partners[i]), ids(w.pieces[i].graph)));
            }
            st.position = position;
            st.params.quotient = q;
            st.params.side = 'M';
            d = compose(d, single(std::move(st)));
            break;
        }
        case WitnessKind::PrimeB: {
            const Graph& kx = w.pieces[0].graph;
            const Graph& ky = w.pieces[1].graph;
            const Graph& mi = w.partners[0];
            const Graph& reduced = w.partners[1];
            d = compose(d, liftProof(w.pieceProofs[1], c.host, c.holeNeighbors));
            // K_X joins the slot of M_i
            std::vector<VertexId> slotNbrs = w.principal.idsOf(neighbourhood(w.principal, w.principal.maskOf(ids(mi))));
            Graph host = plug(c, parKeep(ky, reduced));
            d = compose(d, liftProof(w.pieceProofs[0], host, unionIds(c.holeNeighbors, slotNbrs)));
            if (!kx.empty()) {
                Graph concl = plug(c, parKeep(parKeep(kx, ky), w.principal));
                d = compose(d, single(ssStep(concl, ids(kx), ids(w.principal), slotNbrs)));
            }
            break;
        }
        case WitnessKind::Atomic:
        case WitnessKind::ContextReduction: {
            d = compose(d, liftProof(w.pieceProofs[0], c.host, c.holeNeighbors));
            if (w.kind == WitnessKind::ContextReduction) {
                auto inst = instantiateHole(w, w.principal);
                if (!inst) throw std::logic_error("reassemble: the context derivation does not take the module");
                return compose(d, *inst);
            }
            break;
        }
    }
    return compose(d, lowerPart(w));
}

std::string verifyWitness(const SplitWitness& w) {
    auto checkOne = [](const Derivation& d, const std::string& what) -> std::string {
        CheckResult r = checkDerivation(d, RuleSet::gs());
        if (!r) return what + ": step " + std::to_string(r.failedStep) + ": " + r.message;
        return {};
    };
    if (!w.contextProof.isProof() || w.contextProof.conclusion != w.context.host) return "context proof does not prove C";
    if (auto e = checkOne(w.contextProof, "context proof"); !e.empty()) return e;
    if (w.pieceProofs.size() != w.partners.size() || w.pieces.size() < w.pieceProofs.size())
        return "pieces and proofs do not match";
    for (std::size_t i = 0; i < w.pieceProofs.size(); ++i) {
        const Derivation& p = w.pieceProofs[i];
        if (!p.isProof() || p.conclusion != parKeep(w.pieces[i].graph, w.partners[i]))
            return "proof of " + w.pieces[i].name + " has the wrong conclusion";
        if (auto e = checkOne(p, w.pieces[i].name); !e.empty()) return e;
    }
    for (VertexId v : w.context.holeNeighbors)
        if (!w.context.host.contains(v)) return "hole neighbour outside the context";
    if (w.contextDerivation.premise != plug(w.context, w.hole)) return "context derivation does not start at C<K>R";
    if (w.kind == WitnessKind::ContextReduction) {
        Graph expectedHole = parKeep(w.pieces[0].graph, singleton(Atom(kPlaceholderAtom), w.placeholder));
        if (w.hole != expectedHole) return "hole is not K | placeholder";
        for (const Graph& probe : holeProbes(w))
            if (!instantiateHole(w, probe)) return "context derivation is not uniform in the hole";
    } else {
        if (w.contextDerivation.conclusion != w.g) return "context derivation does not end at G";
        if (auto e = checkOne(w.contextDerivation, "context derivation"); !e.empty()) return e;
    }
    switch (w.kind) {
        case WitnessKind::Tensor:
        case WitnessKind::MultiTensor: {
            Graph all;
            for (const auto& p : w.pieces) all = parKeep(all, p.graph);
            if (all != w.hole) return "the hole is not the par of the pieces";
            break;
        }
        case WitnessKind::PrimeB:
            if (parKeep(w.pieces[0].graph, w.pieces[1].graph) != w.hole) return "the hole is not KX | KY";
            break;
        case WitnessKind::Atomic:
            if (w.hole.size() != 1 || w.hole.label(0) != w.principal.label(0).negated()) return "the hole is not the dual atom";
            break;
        default: break;
    }
    Derivation full = reassemble(w);
    if (!full.isProof() || full.conclusion != w.goal) return "reassembled derivation does not prove the goal";
    if (auto e = checkOne(full, "reassembled proof"); !e.empty()) return e;
    return {};
}

std::string formatWitness(const SplitWitness& w) {
    std::ostringstream out;
    auto ids = [](const std::vector<VertexId>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "}";
    };
    out << "witness " << witnessKindName(w.kind) << "\n";
    if (w.kind == WitnessKind::PrimeB) out << "slot " << w.slot << "\n";
    out << "context C\n" << formatGraph(w.context.host) << "end\n";
    out << "R " << ids(w.context.holeNeighbors) << "\n";
    for (std::size_t i = 0; i < w.pieces.size(); ++i) {
        out << "piece " << w.pieces[i].name << "\n" << formatGraph(w.pieces[i].graph) << "end\n";
        if (i < w.pieceProofs.size()) out << "proof " << w.pieces[i].name << "\n" << formatDerivation(w.pieceProofs[i]);
    }
    out << "proof C\n" << formatDerivation(w.contextProof);
    out << "context derivation\n" << formatDerivation(w.contextDerivation);
    return out.str();
}

}  // namespace gs
