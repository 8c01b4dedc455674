// Canonical labelling by recursion over the modular decomposition tree.
// Par and Tensor nodes sort their children; prime quotients are labelled by
// colour refinement followed by a branch-and-bound search for the smallest
// adjacency code.

#include "gs/graph.hpp"
#include "gs/modular.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <numeric>

namespace gs {

namespace {

struct Canon {
    std::string key;
    std::vector<int> order;
};

std::vector<int> refineColours(const Graph& q, std::vector<int> colour) {
    std::size_t n = q.size();
    std::size_t classes = std::set<int>(colour.begin(), colour.end()).size();
    while (true) {
        std::vector<std::pair<int, std::vector<int>>> sig(n);
        for (std::size_t i = 0; i < n; ++i) {
            sig[i].first = colour[i];
            for (std::size_t j = 0; j < n; ++j)
                if (q.adjacent(i, j)) sig[i].second.push_back(colour[j]);
            std::sort(sig[i].second.begin(), sig[i].second.end());
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t i = 0; i < n; ++i)
            colour[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
        if (sorted.size() == classes) return colour;
        classes = sorted.size();
    }
}

struct QuotientSearch {
    const Graph& q;
    std::vector<int> colour;
    std::vector<int> needed;   // colour required at each position
    std::vector<int> perm, best;
    std::vector<std::uint64_t> cols, bestCols;
    Mask used = 0;

    QuotientSearch(const Graph& q_, std::vector<int> c) : q(q_), colour(std::move(c)) {
        needed = colour;
        std::sort(needed.begin(), needed.end());
        perm.assign(q.size(), -1);
        cols.assign(q.size(), 0);
    }

    // column p encodes adjacency of position p to positions 0..p-1, earlier positions in higher bits
    std::uint64_t column(int v, std::size_t p) const {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < p; ++i)
            if (q.adjacent(perm[i], v)) c |= std::uint64_t{1} << (63 - i);
        return c;
    }

    // -1, 0, 1 as cols[0..p] compares with the best code found so far
    int comparePrefix(std::size_t p) const {
        for (std::size_t i = 0; i <= p; ++i)
            if (cols[i] != bestCols[i]) return cols[i] < bestCols[i] ? -1 : 1;
        return 0;
    }

    void search(std::size_t p) {
        if (p == q.size()) {
            if (best.empty() || comparePrefix(p - 1) < 0) {
                best = perm;
                bestCols = cols;
            }
            return;
        }
        for (std::size_t v = 0; v < q.size(); ++v) {
            if (((used >> v) & 1u) || colour[v] != needed[p]) continue;
            perm[p] = static_cast<int>(v);
            cols[p] = column(static_cast<int>(v), p);
            if (!best.empty() && comparePrefix(p) > 0) continue;
            used |= Mask{1} << v;
            search(p + 1);
            used &= ~(Mask{1} << v);
        }
    }
};

Canon canon(const Graph& g, const MDTree& t) {
    if (t.isLeaf()) return {"a" + std::to_string(t.atom.code()), {std::countr_zero(t.vertices)}};
    std::vector<Canon> kids;
    for (auto& c : t.children) kids.push_back(canon(g, c));
    Canon out;
    if (t.kind != MDTree::Kind::Prime) {
        std::stable_sort(kids.begin(), kids.end(), [](const Canon& x, const Canon& y) { return x.key < y.key; });
        out.key = t.kind == MDTree::Kind::Par ? "P(" : "T(";
        for (std::size_t i = 0; i < kids.size(); ++i) {
            out.key += (i ? "," : "") + kids[i].key;
            out.order.insert(out.order.end(), kids[i].order.begin(), kids[i].order.end());
        }
        out.key += ")";
        return out;
    }
    std::vector<std::string> keys;
    for (auto& k : kids) keys.push_back(k.key);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> colour;
    for (auto& k : kids)
        colour.push_back(static_cast<int>(std::lower_bound(keys.begin(), keys.end(), k.key) - keys.begin()));
    // refinement splits classes further, but only the original colours enter the key
    std::vector<int> refined = refineColours(t.quotient, colour);
    QuotientSearch s(t.quotient, refined);
    s.search(0);
    out.key = "Q" + std::to_string(kids.size()) + "(";
    for (std::size_t p = 0; p < s.best.size(); ++p) {
        const Canon& k = kids[s.best[p]];
        out.key += (p ? "," : "") + k.key;
        out.order.insert(out.order.end(), k.order.begin(), k.order.end());
    }
    out.key += ";";
    for (std::size_t p = 1; p < s.best.size(); ++p) {
        std::uint64_t c = s.bestCols[p];
        for (std::size_t i = 0; i < p; ++i) out.key += ((c >> (63 - i)) & 1u) ? '1' : '0';
    }
    out.key += ")";
    return out;
}

}  // namespace

CanonicalLabeling canonicalLabeling(const Graph& g) {
    if (g.empty()) return {"E", {}};
    Canon c = canon(g, decompose(g));
    return {std::move(c.key), std::move(c.order)};
}

}  // namespace gs
