#include "gs/connectives.hpp"

#include "gs/graph.hpp"
#include "gs/modular.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gs {

Partition Partition::make(int n, std::vector<std::vector<int>> blocks) {
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("partition with an empty block");
        for (int x : b) {
            if (x < 1 || x > n) throw std::invalid_argument("partition element " + std::to_string(x) + " outside 1.." + std::to_string(n));
            if (seen[x]++) throw std::invalid_argument("element " + std::to_string(x) + " occurs twice");
        }
        std::sort(b.begin(), b.end());
    }
    for (int x = 1; x <= n; ++x)
        if (!seen[x]) throw std::invalid_argument("element " + std::to_string(x) + " is not covered");
    std::sort(blocks.begin(), blocks.end());
    return Partition{n, std::move(blocks)};
}

PartitionSet PartitionSet::make(int n, std::vector<Partition> parts) {
    if (parts.empty()) throw std::invalid_argument("empty partition set");
    for (const auto& p : parts)
        if (p.n != n) throw std::invalid_argument("partitions of different sizes");
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    return PartitionSet{n, std::move(parts)};
}

bool PartitionSet::contains(const Partition& p) const { return std::binary_search(parts.begin(), parts.end(), p); }

std::vector<Partition> allPartitions(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("allPartitions: n must be in 1..8");
    std::vector<Partition> out;
    // restricted growth strings
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    while (true) {
        int k = *std::max_element(a.begin(), a.end()) + 1;
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
        for (int i = 0; i < n; ++i) blocks[a[i]].push_back(i + 1);
        out.push_back(Partition::make(n, blocks));
        int i = n - 1;
        for (; i > 0; --i) {
            int mx = *std::max_element(a.begin(), a.begin() + i);
            if (a[i] <= mx) break;
        }
        if (i == 0) break;
        ++a[i];
        for (int j = i + 1; j < n; ++j) a[j] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- literals

namespace {

class Reader {
public:
    explicit Reader(std::string_view s) : s_(s) {}
    void skip() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    void expect(char c) {
        skip();
        if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }
    int number() {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && s_[i_] >= '0' && s_[i_] <= '9') ++i_;
        if (start == i_) fail("expected a number");
        return std::stoi(std::string(s_.substr(start, i_ - start)));
    }
    void end() {
        skip();
        if (i_ != s_.size()) fail("unexpected trailing input");
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, i_ + 1); }

    std::vector<std::vector<int>> blocks() {
        std::vector<std::vector<int>> out;
        expect('{');
        do {
            std::vector<int> b;
            expect('{');
            do b.push_back(number());
            while (peek(',') && (expect(','), true));
            expect('}');
            out.push_back(std::move(b));
        } while (peek(',') && (expect(','), true));
        expect('}');
        return out;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

int maxElement(const std::vector<std::vector<int>>& bs) {
    int m = 0;
    for (const auto& b : bs)
        for (int x : b) m = std::max(m, x);
    return m;
}

Partition toPartition(std::vector<std::vector<int>> bs, const Reader& r) {
    int n = maxElement(bs);
    try {
        return Partition::make(n, std::move(bs));
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
}

}  // namespace

Partition parsePartition(std::string_view text) {
    Reader r(text);
    auto bs = r.blocks();
    r.end();
    return toPartition(std::move(bs), r);
}

PartitionSet parsePartitionSet(std::string_view text) {
    Reader r(text);
    std::vector<Partition> parts;
    r.expect('{');
    do parts.push_back(toPartition(r.blocks(), r));
    while (r.peek(',') && (r.expect(','), true));
    r.expect('}');
    r.end();
    int n = parts.front().n;
    try {
        return PartitionSet::make(n, std::move(parts));
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
}

std::string formatPartition(const Partition& p) {
    std::string s = "{";
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        s += i ? ",{" : "{";
        for (std::size_t j = 0; j < p.blocks[i].size(); ++j) s += (j ? "," : "") + std::to_string(p.blocks[i][j]);
        s += "}";
    }
    return s + "}";
}

std::string formatPartitionSet(const PartitionSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.parts.size(); ++i) out += (i ? "," : "") + formatPartition(s.parts[i]);
    return out + "}";
}

// ---------------------------------------------------------------- orthogonality

int IncidenceGraph::componentCount() const {
    std::vector<int> parent(static_cast<std::size_t>(vertexCount()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = vertexCount();
    for (auto [u, v] : edges) {
        int a = find(u), b = find(v);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps;
}

bool IncidenceGraph::acyclic() const {
    // a forest has exactly |V| - components edges
    return static_cast<int>(edges.size()) == vertexCount() - componentCount();
}

IncidenceGraph incidenceGraph(const Partition& p, const Partition& q) {
    if (p.n != q.n) throw std::invalid_argument("incidenceGraph: partitions of different sizes");
    IncidenceGraph g;
    g.pBlocks = static_cast<int>(p.blocks.size());
    g.qBlocks = static_cast<int>(q.blocks.size());
    std::vector<int> qOf(static_cast<std::size_t>(p.n) + 1);
    for (std::size_t j = 0; j < q.blocks.size(); ++j)
        for (int x : q.blocks[j]) qOf[x] = static_cast<int>(j);
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        for (int x : p.blocks[i]) g.edges.emplace_back(static_cast<int>(i), g.pBlocks + qOf[x]);
    return g;
}

bool orthogonal(const Partition& p, const Partition& q) {
    IncidenceGraph g = incidenceGraph(p, q);
    return g.componentCount() == 1 && g.acyclic();
}

bool orthogonalSets(const PartitionSet& p, const PartitionSet& q) {
    if (p.n != q.n) throw std::invalid_argument("orthogonalSets: sets of different sizes");
    for (const auto& x : p.parts)
        for (const auto& y : q.parts)
            if (!orthogonal(x, y)) return false;
    return true;
}

std::vector<Partition> orthogonalComplement(const PartitionSet& p) {
    std::vector<Partition> out;
    for (const Partition& q : allPartitions(p.n)) {
        bool ok = true;
        for (const Partition& x : p.parts)
            if (!orthogonal(x, q)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(q);
    }
    return out;
}

// ---------------------------------------------------------------- permutations

Partition permute(const Partition& p, const Permutation& sigma) {
    std::vector<std::vector<int>> bs;
    for (const auto& b : p.blocks) {
        std::vector<int> nb;
        for (int x : b) nb.push_back(sigma[x - 1]);
        bs.push_back(std::move(nb));
    }
    return Partition::make(p.n, std::move(bs));
}

PartitionSet permute(const PartitionSet& s, const Permutation& sigma) {
    std::vector<Partition> ps;
    for (const auto& p : s.parts) ps.push_back(permute(p, sigma));
    return PartitionSet::make(s.n, std::move(ps));
}

std::vector<Permutation> stabilizerGroup(const PartitionSet& s) {
    if (s.n > 8) throw std::invalid_argument("stabilizerGroup: n is limited to 8");
    Permutation sigma(static_cast<std::size_t>(s.n));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::vector<Permutation> out;
    do
        if (permute(s, sigma) == s) out.push_back(sigma);
    while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

std::string formatCycles(const Permutation& sigma) {
    std::string out;
    std::vector<bool> done(sigma.size(), false);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (done[i] || sigma[i] == static_cast<int>(i) + 1) continue;
        out += "(";
        for (std::size_t j = i; !done[j]; j = static_cast<std::size_t>(sigma[j] - 1)) {
            if (j != i) out += ",";
            out += std::to_string(j + 1);
            done[j] = true;
        }
        out += ")";
    }
    return out.empty() ? "(1)" : out;
}

Permutation parseCycles(std::string_view text, int n) {
    Permutation sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    Reader r(text);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    while (r.peek('(')) {
        r.expect('(');
        std::vector<int> cyc;
        do {
            int x = r.number();
            if (x < 1 || x > n) r.fail("element out of range");
            if (used[x] && cyc.size() + 1 > 1) r.fail("element repeated");
            used[x] = true;
            cyc.push_back(x);
        } while (r.peek(',') && (r.expect(','), true));
        r.expect(')');
        if (cyc.size() > 1)
            for (std::size_t i = 0; i < cyc.size(); ++i) sigma[cyc[i] - 1] = cyc[(i + 1) % cyc.size()];
    }
    r.end();
    return sigma;
}

Permutation composePermutations(const Permutation& f, const Permutation& g) {
    Permutation out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i] - 1];
    return out;
}

Permutation inversePermutation(const Permutation& f) {
    Permutation out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[f[i] - 1] = static_cast<int>(i) + 1;
    return out;
}

// ---------------------------------------------------------------- formulas and censuses

std::vector<Partition> formulaPartitions(const LeafFormula& f, int n) {
    // blocks as element lists; combined at the end
    std::function<std::vector<std::vector<std::vector<int>>>(const LeafFormula&)> rec = [&](const LeafFormula& x) {
        std::vector<std::vector<std::vector<int>>> out;
        if (x.kind == LeafFormula::Kind::Leaf) {
            out.push_back({{x.leaf}});
            return out;
        }
        auto l = rec(x.children.at(0)), r = rec(x.children.at(1));
        for (const auto& p : l)
            for (const auto& q : r) {
                if (x.kind == LeafFormula::Kind::Tensor) {
                    auto u = p;
                    u.insert(u.end(), q.begin(), q.end());
                    out.push_back(std::move(u));
                } else {
                    // the two subformulas meet in exactly one premise
                    for (std::size_t i = 0; i < p.size(); ++i)
                        for (std::size_t j = 0; j < q.size(); ++j) {
                            std::vector<std::vector<int>> u;
                            for (std::size_t k = 0; k < p.size(); ++k)
                                if (k != i) u.push_back(p[k]);
                            for (std::size_t k = 0; k < q.size(); ++k)
                                if (k != j) u.push_back(q[k]);
                            auto merged = p[i];
                            merged.insert(merged.end(), q[j].begin(), q[j].end());
                            u.push_back(std::move(merged));
                            out.push_back(std::move(u));
                        }
                }
            }
        return out;
    };
    std::vector<Partition> out;
    for (auto& bs : rec(f)) out.push_back(Partition::make(n, bs));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// every formula shape over the given leaves, in the given order
void shapes(const std::vector<int>& leaves, std::size_t lo, std::size_t hi, std::vector<LeafFormula>& out) {
    if (hi - lo == 1) {
        LeafFormula f;
        f.leaf = leaves[lo];
        out.push_back(f);
        return;
    }
    for (std::size_t mid = lo + 1; mid < hi; ++mid) {
        std::vector<LeafFormula> ls, rs;
        shapes(leaves, lo, mid, ls);
        shapes(leaves, mid, hi, rs);
        for (const auto& l : ls)
            for (const auto& r : rs)
                for (auto k : {LeafFormula::Kind::Par, LeafFormula::Kind::Tensor}) {
                    LeafFormula f;
                    f.kind = k;
                    f.children = {l, r};
                    out.push_back(f);
                }
    }
}

}  // namespace

std::vector<PartitionSet> decomposableSets(int n) {
    std::vector<int> leaves(static_cast<std::size_t>(n));
    std::iota(leaves.begin(), leaves.end(), 1);
    std::set<std::vector<Partition>> seen;
    std::vector<PartitionSet> out;
    do {
        std::vector<LeafFormula> fs;
        shapes(leaves, 0, leaves.size(), fs);
        for (const auto& f : fs) {
            auto ps = formulaPartitions(f, n);
            if (seen.insert(ps).second) out.push_back(PartitionSet::make(n, ps));
        }
    } while (std::next_permutation(leaves.begin(), leaves.end()));
    return out;
}

bool isDecomposable(const PartitionSet& s) {
    for (const auto& d : decomposableSets(s.n))
        if (d == s) return true;
    return false;
}

ConnectiveCensus connectiveCensus(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("connectiveCensus: n must be in 1..4");
    std::vector<Partition> all = allPartitions(n);
    std::set<std::vector<Partition>> decomposable;
    for (const auto& d : decomposableSets(n)) decomposable.insert(d.parts);
    std::size_t m = all.size();
    // orthogonality table as bitmasks over the partitions
    std::vector<unsigned> orth(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (orthogonal(all[i], all[j])) orth[i] |= 1u << j;
    auto perp = [&](unsigned set) {
        unsigned out = (m == 32) ? ~0u : ((1u << m) - 1);
        for (std::size_t i = 0; i < m; ++i)
            if ((set >> i) & 1u) out &= orth[i];
        return out;
    };
    auto toSet = [&](unsigned bits) {
        std::vector<Partition> ps;
        for (std::size_t i = 0; i < m; ++i)
            if ((bits >> i) & 1u) ps.push_back(all[i]);
        return ps;
    };
    ConnectiveCensus c;
    for (unsigned p = 1; p < (1u << m); ++p) {
        unsigned q = perp(p);
        if (!q || perp(q) != p || q < p) continue;   // each unordered pair once
        ++c.dualPairs;
        auto ps = toSet(p), qs = toSet(q);
        if (decomposable.count(ps) || decomposable.count(qs)) continue;
        ++c.nonDecomposableDualPairs;
        c.nonDecomposable.emplace_back(PartitionSet::make(n, ps), PartitionSet::make(n, qs));
    }
    return c;
}

PrimeCensus primeGraphCensus() {
    std::vector<std::pair<int, int>> slots = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::set<unsigned> primes;
    for (unsigned e = 0; e < 64; ++e) {
        std::vector<std::pair<VertexId, Atom>> vs;
        for (VertexId i = 0; i < 4; ++i) vs.emplace_back(i, Atom());
        std::vector<std::pair<VertexId, VertexId>> es;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if ((e >> k) & 1u) es.emplace_back(slots[k].first, slots[k].second);
        if (isPrime(Graph(vs, es))) primes.insert(e);
    }
    PrimeCensus c;
    c.instances = primes.size();
    for (unsigned e : primes)
        if (primes.count(63u & ~e) && e < (63u & ~e)) ++c.dualPairs;
    return c;
}

PartitionSet g4Partitions() { return parsePartitionSet("{{{1,2},{3,4}},{{1,4},{2,3}}}"); }

}  // namespace gs
