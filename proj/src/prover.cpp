#include "gs/prover.hpp"
#include "gs/modular.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace gs {

namespace {

Derivation single(const ProofStep& s) {
    Derivation d;
    d.premise = s.premise;
    d.conclusion = s.conclusion;
    d.steps = {s};
    return d;
}

bool augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& matchR, std::vector<char>& seen) {
    for (int v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = 1;
        if (matchR[v] < 0 || augment(matchR[v], adj, matchR, seen)) {
            matchR[v] = u;
            return true;
        }
    }
    return false;
}

bool balanced(const Graph& g, Mask m) {
    std::map<std::uint32_t, int> balance;
    for (Mask r = m; r; r &= r - 1) {
        Atom a = g.label(std::countr_zero(r));
        balance[a.symbol()] += a.negative() ? -1 : 1;
    }
    return std::all_of(balance.begin(), balance.end(), [](auto& kv) { return kv.second == 0; });
}

// The par-children of a P4-free graph are the formulas of a sequent. The last rule of a proof
// is an axiom, a mix splitting the sequent, or a tensor T = A * B whose context is split.
class MixOracle {
public:
    bool provable(const Graph& g) {
        if (g.empty()) return true;
        if (g.size() % 2 || !balanced(g, g.all())) return false;
        std::string key = canonicalForm(g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool ok = decide(g);
        memo_.emplace(key, ok);
        return ok;
    }

private:
    std::unordered_map<std::string, bool> memo_;

    bool both(const Graph& g, Mask x, Mask y) {
        if (!balanced(g, x) || !balanced(g, y)) return false;
        return provable(induced(g, x)) && provable(induced(g, y));
    }

    bool decide(const Graph& g) {
        MDTree t = decompose(g);
        if (t.kind == MDTree::Kind::Prime || hasPrimeNode(t)) throw std::invalid_argument("mixProvable: graph is not P4-free");
        if (t.isLeaf()) return false;
        if (t.kind == MDTree::Kind::Tensor) {
            Mask first = t.children.front().vertices;
            return both(g, first, g.all() & ~first);
        }
        std::vector<Mask> kids;
        for (auto& c : t.children) kids.push_back(c.vertices);
        if (kids.size() == 2 && g.size() == 2) return g.label(0) == g.label(1).negated();
        std::size_t k = kids.size();
        // mix: the group holding the first formula against the rest
        for (Mask pick = 0; pick < (Mask{1} << (k - 1)); ++pick) {
            Mask x = kids[0], y = 0;
            for (std::size_t i = 1; i < k; ++i) ((pick >> (i - 1)) & 1u ? x : y) |= kids[i];
            if (y && both(g, x, y)) return true;
        }
        for (std::size_t ti = 0; ti < k; ++ti) {
            const MDTree& c = t.children[ti];
            if (c.kind != MDTree::Kind::Tensor) continue;
            Mask a = c.children.front().vertices, b = c.vertices & ~a;
            std::vector<Mask> ctx;
            for (std::size_t i = 0; i < k; ++i)
                if (i != ti) ctx.push_back(kids[i]);
            for (Mask pick = 0; pick < (Mask{1} << ctx.size()); ++pick) {
                Mask x = a, y = b;
                for (std::size_t i = 0; i < ctx.size(); ++i) ((pick >> i) & 1u ? x : y) |= ctx[i];
                if (both(g, x, y)) return true;
            }
        }
        return false;
    }
};

}  // namespace

bool mixProvable(const Graph& g) {
    if (!isP4Free(g)) throw std::invalid_argument("mixProvable: graph is not P4-free");
    MixOracle o;
    return o.provable(g);
}

std::string verdictName(Verdict v) {
    switch (v) {
        case Verdict::Provable: return "provable";
        case Verdict::Refuted: return "not provable";
        case Verdict::Limit: return "limit exceeded";
    }
    return "?";
}

bool refutedByFilters(const Graph& g) {
    if (g.size() % 2) return true;
    std::map<std::uint32_t, int> balance;
    for (Atom a : g.labels()) balance[a.symbol()] += a.negative() ? -1 : 1;
    for (auto [s, b] : balance)
        if (b) return true;
    std::vector<int> pos, neg;
    for (std::size_t i = 0; i < g.size(); ++i) (g.label(i).negative() ? neg : pos).push_back(static_cast<int>(i));
    std::vector<std::vector<int>> adj(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = 0; j < neg.size(); ++j)
            if (g.label(pos[i]).negated() == g.label(neg[j]) && !g.adjacent(pos[i], neg[j]))
                adj[i].push_back(static_cast<int>(j));
    std::vector<int> matchR(neg.size(), -1);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        std::vector<char> seen(neg.size(), 0);
        if (!augment(static_cast<int>(i), adj, matchR, seen)) return true;
    }
    return false;
}

struct Prover::Impl {
    enum class How { Step, Tensor, Prime };
    struct Entry {
        bool provable = false;
        How how = How::Step;
        ProofStep step;                  // canonical ids
        std::vector<VertexId> part;      // canonical ids of the proved prime child
    };

    ProverConfig cfg;
    std::unordered_map<std::string, Entry> memo;
    std::string analyticGoal;
    MixOracle mix;
    std::set<std::string> allowed;
    std::chrono::steady_clock::time_point deadline;
    std::size_t visited = 0;

    explicit Impl(ProverConfig c) : cfg(std::move(c)) {}

    void checkLimits() {
        if (visited > cfg.memoLimit) throw LimitError("memo limit of " + std::to_string(cfg.memoLimit) + " graphs reached");
        if (cfg.timeBudget.count() > 0 && (visited & 63) == 0 && std::chrono::steady_clock::now() > deadline)
            throw LimitError("time budget of " + std::to_string(cfg.timeBudget.count()) + " ms exceeded");
    }

    bool analyticOk(const Graph& p) const {
        if (!cfg.analyticPruning || p.empty()) return true;
        for (const Graph& q : connectors(decompose(p)))
            if (!allowed.count(connectorKey(q))) return false;
        return true;
    }

    std::vector<ProofStep> candidates(const Graph& g) const {
        std::vector<ProofStep> out;
        auto take = [&](std::vector<ProofStep> v) {
            for (auto& s : v) out.push_back(std::move(s));
        };
        const RuleSet& r = cfg.rules;
        if (r.contains(Rule::AiDown)) take(premisesAiDown(g));
        if (r.contains(Rule::SsDown)) take(cfg.reducedSwitch ? premisesSsDownReduced(g) : premisesSsDown(g, kMaxVertices));
        if (r.contains(Rule::PDown)) take(premisesPDown(g, kMaxVertices));
        if (r.contains(Rule::SsUp)) take(premisesSsUp(g, kMaxVertices));
        if (r.contains(Rule::GDown)) take(premisesGDown(g));
        return out;
    }

    static ProofStep renameStep(const ProofStep& s, const Bijection& r) { return renameDerivation(single(s), r).steps.front(); }

    bool search(const Graph& g) {
        if (g.empty()) return true;
        CanonicalLabeling lab = canonicalLabeling(g);
        if (auto it = memo.find(lab.key); it != memo.end()) return it->second.provable;
        ++visited;
        checkLimits();
        Bijection toCanon;
        for (std::size_t k = 0; k < lab.order.size(); ++k) toCanon[g.id(lab.order[k])] = static_cast<VertexId>(k);

        Entry e;
        MDTree t = g.empty() ? MDTree{} : decompose(g);
        bool cograph = !hasPrimeNode(t);
        if (!refutedByFilters(g) && (!cfg.cographOracle || !cograph || mix.provable(g))) {
            if (cfg.shortcuts && t.kind == MDTree::Kind::Tensor) {
                e.how = How::Tensor;
                e.provable = std::all_of(t.children.begin(), t.children.end(),
                                         [&](const MDTree& c) { return search(induced(g, c.vertices)); });
            } else if (cfg.shortcuts && t.kind == MDTree::Kind::Prime) {
                e.how = How::Prime;
                for (const MDTree& c : t.children) {
                    if (search(induced(g, c.vertices)) && search(removeVertices(g, c.vertices))) {
                        e.provable = true;
                        for (VertexId v : g.idsOf(c.vertices)) e.part.push_back(toCanon.at(v));
                        std::sort(e.part.begin(), e.part.end());
                        break;
                    }
                }
            } else {
                std::vector<std::pair<std::pair<SizeMeasure, std::string>, ProofStep>> keyed;
                std::set<std::string> seen;
                for (auto& s : candidates(g)) {
                    std::string k = canonicalForm(s.premise);
                    if (!seen.insert(k).second) continue;
                    keyed.push_back({{sizeMeasure(s.premise), k}, std::move(s)});
                }
                std::sort(keyed.begin(), keyed.end(), [](auto& x, auto& y) { return x.first < y.first; });
                for (auto& [key, s] : keyed) {
                    if (refutedByFilters(s.premise) || !analyticOk(s.premise)) continue;
                    // P4-free goals have proofs through P4-free graphs only
                    if (cfg.cographOracle && cograph && !s.premise.empty() &&
                        (!isP4Free(s.premise) || !mix.provable(s.premise)))
                        continue;
                    if (search(s.premise)) {
                        e.provable = true;
                        e.how = How::Step;
                        e.step = renameStep(s, toCanon);
                        break;
                    }
                }
            }
        }
        memo.emplace(lab.key, e);
        return e.provable;
    }

    Derivation rebuild(const Graph& g) {
        if (g.empty()) return emptyDerivation(g);
        CanonicalLabeling lab = canonicalLabeling(g);
        const Entry& e = memo.at(lab.key);
        Bijection fromCanon;
        for (std::size_t k = 0; k < lab.order.size(); ++k) fromCanon[static_cast<VertexId>(k)] = g.id(lab.order[k]);
        switch (e.how) {
            case How::Step: {
                ProofStep s = renameStep(e.step, fromCanon);
                return compose(rebuild(s.premise), single(s));
            }
            case How::Tensor: {
                MDTree t = decompose(g);
                Derivation d = emptyDerivation(Graph());
                Mask done = 0;
                for (const MDTree& c : t.children) {
                    Graph host = induced(g, done);
                    d = compose(d, liftDerivation(rebuild(induced(g, c.vertices)), GraphContext{host, host.ids()}));
                    done |= c.vertices;
                }
                return d;
            }
            case How::Prime: {
                std::vector<VertexId> ids;
                for (VertexId v : e.part) ids.push_back(fromCanon.at(v));
                Mask part = g.maskOf(ids);
                Derivation d = rebuild(removeVertices(g, part));
                return compose(d, liftDerivation(rebuild(induced(g, part)), contextOf(g, part)));
            }
        }
        throw std::logic_error("unreachable");
    }
};

Prover::Prover(ProverConfig cfg) : cfg_(cfg), impl_(std::make_unique<Impl>(cfg)) {}
Prover::~Prover() = default;
Prover::Prover(Prover&&) noexcept = default;
Prover& Prover::operator=(Prover&&) noexcept = default;

std::size_t Prover::memoSize() const { return impl_->memo.size(); }

ProofResult Prover::run(const Graph& g) {
    ProofResult r;
    Impl& m = *impl_;
    if (g.size() > cfg_.vertexLimit) {
        r.verdict = Verdict::Limit;
        r.message = "goal has " + std::to_string(g.size()) + " vertices, limit is " + std::to_string(cfg_.vertexLimit);
        return r;
    }
    if (cfg_.analyticPruning) {
        // pruning depends on the goal, so results are not shared between goals
        std::string key = canonicalForm(g);
        if (key != m.analyticGoal) {
            m.memo.clear();
            m.analyticGoal = key;
            auto sub = subconnectors(g);
            m.allowed = {sub.begin(), sub.end()};
        }
    }
    m.deadline = std::chrono::steady_clock::now() + cfg_.timeBudget;
    std::size_t before = m.visited;
    try {
        if (m.search(g)) {
            r.verdict = Verdict::Provable;
            r.proof = m.rebuild(g);
        } else {
            r.verdict = Verdict::Refuted;
        }
    } catch (const LimitError& e) {
        r.verdict = Verdict::Limit;
        r.message = e.what();
    }
    r.visited = m.visited - before;
    return r;
}

bool Prover::provable(const Graph& g) {
    ProofResult r = run(g);
    if (r.verdict == Verdict::Limit) throw LimitError(r.message);
    return r.verdict == Verdict::Provable;
}

std::optional<Derivation> Prover::prove(const Graph& g) {
    ProofResult r = run(g);
    if (r.verdict == Verdict::Limit) throw LimitError(r.message);
    return std::move(r.proof);
}

std::optional<Derivation> prove(const Graph& g, const ProverConfig& cfg) { return Prover(cfg).prove(g); }

std::optional<Derivation> proveImplication(const Graph& g, const Graph& h, const ProverConfig& cfg) {
    return prove(par(dual(g), h), cfg);
}

std::optional<Derivation> proveAnalytic(const Graph& g, ProverConfig cfg) {
    cfg.rules = RuleSet::gsSsUp();
    cfg.analyticPruning = true;
    return prove(g, cfg);
}

std::vector<std::string> enumerateProvable(std::size_t n, const std::vector<Atom>& alphabet, const ProverConfig& cfg) {
    if (n > 6) throw LimitError("enumerateProvable is limited to 6 vertices");
    Prover prover(cfg);
    std::set<std::string> seen, provable;
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    // up to isomorphism the labels can be taken in non-decreasing order
    std::vector<std::size_t> pick(n, 0);
    std::function<void(std::size_t, std::size_t)> labels = [&](std::size_t k, std::size_t from) {
        if (k == n) {
            std::vector<VertexId> ids;
            std::vector<Atom> ls;
            for (std::size_t i = 0; i < n; ++i) {
                ids.push_back(static_cast<VertexId>(i));
                ls.push_back(alphabet[pick[i]]);
            }
            // without edges the filters reject exactly the unbalanced label sets
            if (refutedByFilters(Graph::fromParts(ids, ls, std::vector<Mask>(n, 0)))) return;
            for (std::uint64_t es = 0; es < (std::uint64_t{1} << pairs.size()); ++es) {
                std::vector<Mask> adj(n, 0);
                for (std::size_t e = 0; e < pairs.size(); ++e)
                    if ((es >> e) & 1u) {
                        adj[pairs[e].first] |= Mask{1} << pairs[e].second;
                        adj[pairs[e].second] |= Mask{1} << pairs[e].first;
                    }
                Graph g = Graph::fromParts(ids, ls, adj);
                if (refutedByFilters(g)) continue;
                std::string key = canonicalForm(g);
                if (!seen.insert(key).second) continue;
                if (prover.provable(g)) provable.insert(key);
            }
            return;
        }
        for (std::size_t a = from; a < alphabet.size(); ++a) {
            pick[k] = a;
            labels(k + 1, a);
        }
    };
    labels(0, 0);
    return {provable.begin(), provable.end()};
}

}  // namespace gs
