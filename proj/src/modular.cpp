#include "gs/modular.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace gs {

namespace {

Mask bit(int i) { return Mask{1} << i; }

// smallest module of g[m] containing u and v
Mask moduleClosure(const Graph& g, Mask m, int u, int v) {
    Mask c = bit(u) | bit(v);
    bool changed = true;
    while (changed && c != m) {
        changed = false;
        for (Mask out = m & ~c; out; out &= out - 1) {
            int w = std::countr_zero(out);
            Mask r = g.row(w) & c;
            if (r != 0 && r != c) {
                c |= bit(w);
                changed = true;
            }
        }
    }
    return c;
}

MDTree build(const Graph& g, Mask m) {
    MDTree t;
    t.vertices = m;
    if (std::popcount(m) == 1) {
        int i = std::countr_zero(m);
        t.kind = MDTree::Kind::Leaf;
        t.vertex = g.id(i);
        t.atom = g.label(i);
        return t;
    }
    auto comps = components(g, m);
    if (comps.size() > 1) {
        t.kind = MDTree::Kind::Par;
        for (Mask c : comps) t.children.push_back(build(g, c));
        return t;
    }
    auto cocomps = coComponents(g, m);
    if (cocomps.size() > 1) {
        t.kind = MDTree::Kind::Tensor;
        for (Mask c : cocomps) t.children.push_back(build(g, c));
        return t;
    }
    // g[m] and its complement are connected: maximal proper modules partition m
    t.kind = MDTree::Kind::Prime;
    std::vector<Mask> parts;
    Mask left = m;
    while (left) {
        int u = std::countr_zero(left);
        Mask part = bit(u);
        for (Mask r = left & ~bit(u); r; r &= r - 1) {
            int v = std::countr_zero(r);
            if ((part >> v) & 1u) continue;
            Mask c = moduleClosure(g, m, u, v);
            if (c != m) part |= c;
        }
        parts.push_back(part);
        left &= ~part;
    }
    std::vector<VertexId> qids;
    std::vector<Atom> qlabels;
    std::vector<Mask> qadj(parts.size(), 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        qids.push_back(static_cast<VertexId>(i));
        qlabels.push_back(Atom());
        int ri = std::countr_zero(parts[i]);
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (i != j && g.adjacent(ri, std::countr_zero(parts[j]))) qadj[i] |= bit(static_cast<int>(j));
    }
    t.quotient = Graph::fromParts(std::move(qids), std::move(qlabels), std::move(qadj));
    for (Mask p : parts) t.children.push_back(build(g, p));
    return t;
}

}  // namespace

MDTree decompose(const Graph& g) { return decompose(g, g.all()); }

MDTree decompose(const Graph& g, Mask m) {
    m &= g.all();
    if (m == 0) throw std::invalid_argument("decompose: empty graph");
    return build(g, m);
}

Graph recompose(const MDTree& t) {
    if (t.isLeaf()) return singleton(t.atom, t.vertex);
    std::vector<Graph> parts;
    for (auto& c : t.children) parts.push_back(recompose(c));
    Graph out = parts[0];
    std::vector<Mask> slots;
    for (std::size_t i = 1; i < parts.size(); ++i) out = parKeep(out, parts[i]);
    for (auto& p : parts) slots.push_back(out.maskOf(p.ids()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            bool edge = t.kind == MDTree::Kind::Tensor || (t.kind == MDTree::Kind::Prime && t.quotient.adjacent(i, j));
            if (edge) out = addEdges(out, slots[i], slots[j]);
        }
    return out;
}

bool isPrime(const Graph& g) {
    if (g.size() < 2) return false;
    if (g.size() == 2) return true;
    MDTree t = decompose(g);
    if (t.kind != MDTree::Kind::Prime) return false;
    return std::all_of(t.children.begin(), t.children.end(), [](const MDTree& c) { return c.isLeaf(); });
}

bool hasPrimeNode(const MDTree& t) {
    if (t.kind == MDTree::Kind::Prime) return true;
    return std::any_of(t.children.begin(), t.children.end(), [](const MDTree& c) { return hasPrimeNode(c); });
}

bool isP4Free(const Graph& g) { return g.empty() || !hasPrimeNode(decompose(g)); }

Graph parConnector() { return Graph::fromParts({0, 1}, {Atom(), Atom()}, {0, 0}); }
Graph tensorConnector() { return Graph::fromParts({0, 1}, {Atom(), Atom()}, {2, 1}); }
Graph pathP4() { return Graph::fromParts({0, 1, 2, 3}, std::vector<Atom>(4), {0b0010, 0b0101, 0b1010, 0b0100}); }

namespace {

void collectConnectors(const MDTree& t, std::vector<Graph>& out) {
    switch (t.kind) {
        case MDTree::Kind::Leaf: return;
        case MDTree::Kind::Par: out.push_back(parConnector()); break;
        case MDTree::Kind::Tensor: out.push_back(tensorConnector()); break;
        case MDTree::Kind::Prime: out.push_back(t.quotient); break;
    }
    for (auto& c : t.children) collectConnectors(c, out);
}

}  // namespace

std::vector<Graph> connectors(const MDTree& t) {
    std::vector<Graph> out;
    collectConnectors(t, out);
    return out;
}

std::string connectorKey(const Graph& p) { return canonicalForm(relabel(p, Atom())); }

std::vector<std::string> subconnectors(const Graph& g) {
    std::set<std::string> keys;
    if (g.empty()) return {};
    std::set<std::string> seenConnectors;
    for (const Graph& q : connectors(decompose(g))) {
        Graph uq = relabel(q, Atom());
        if (!seenConnectors.insert(canonicalForm(uq)).second) continue;
        Mask n = Mask{1} << uq.size();
        for (Mask s = 3; s < n; ++s) {
            if (std::popcount(s) < 2) continue;
            Graph sub = induced(uq, s);
            if (isPrime(sub)) keys.insert(canonicalForm(sub));
        }
    }
    return {keys.begin(), keys.end()};
}

namespace {

void format(const MDTree& t, std::ostringstream& out, int ctx) {   // ctx: 0 top/arg, 1 inside par, 2 inside tensor
    switch (t.kind) {
        case MDTree::Kind::Leaf: out << t.atom.str(); return;
        case MDTree::Kind::Par: {
            bool paren = ctx == 2;
            if (paren) out << '(';
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out << '|';
                format(t.children[i], out, 1);
            }
            if (paren) out << ')';
            return;
        }
        case MDTree::Kind::Tensor: {
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out << '*';
                format(t.children[i], out, 2);
            }
            return;
        }
        case MDTree::Kind::Prime: {
            const Graph& q = t.quotient;
            std::vector<int> order;
            if (q.size() == 4 && q.edgeCount() == 3) {
                // walk the path from the endpoint whose block holds the smallest vertex
                int start = -1;
                for (int i = 0; i < 4; ++i)
                    if (std::popcount(q.row(i)) == 1 && start < 0) start = i;
                int prev = -1, cur = start;
                while (cur >= 0) {
                    order.push_back(cur);
                    int next = -1;
                    for (int j = 0; j < 4; ++j)
                        if (q.adjacent(cur, j) && j != prev) next = j;
                    prev = cur;
                    cur = next;
                }
                out << "P4<";
            } else {
                for (std::size_t i = 0; i < q.size(); ++i) order.push_back(static_cast<int>(i));
                out << "Q(";
                bool first = true;
                for (auto [v, w] : q.edges()) {
                    out << (first ? "" : " ") << v << '-' << w;
                    first = false;
                }
                out << ")<";
            }
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i) out << ", ";
                format(t.children[order[i]], out, 0);
            }
            out << '>';
            return;
        }
    }
}

}  // namespace

std::string formatTree(const MDTree& t) {
    std::ostringstream out;
    format(t, out, 0);
    return out.str();
}

}  // namespace gs
