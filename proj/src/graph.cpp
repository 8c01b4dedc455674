#include "gs/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace gs {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(column ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                                : "line " + std::to_string(line) + ": " + msg),
      line_(line), column_(column) {}

namespace {

struct AtomTable {
    std::mutex mu;
    std::deque<std::string> names{"_"};   // deque keeps references stable
    std::unordered_map<std::string, std::uint32_t> index{{"_", 0}};
};

AtomTable& atomTable() {
    static AtomTable t;
    return t;
}

bool validAtomName(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s[0])) return false;
    return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c) || c == '\''; });
}

}  // namespace

Atom::Atom(std::string_view name, bool negative) {
    if (!validAtomName(name)) throw std::invalid_argument("invalid atom name '" + std::string(name) + "'");
    auto& t = atomTable();
    std::lock_guard lock(t.mu);
    std::string key(name);
    auto it = t.index.find(key);
    std::uint32_t sym;
    if (it == t.index.end()) {
        sym = static_cast<std::uint32_t>(t.names.size());
        t.names.push_back(key);
        t.index.emplace(key, sym);
    } else {
        sym = it->second;
    }
    code_ = 2 * sym + (negative ? 1u : 0u);
}

Atom Atom::fromCode(std::uint32_t code) {
    Atom a;
    a.code_ = code;
    return a;
}

const std::string& Atom::name() const {
    auto& t = atomTable();
    std::lock_guard lock(t.mu);
    return t.names.at(symbol());
}

std::string Atom::str() const { return negative() ? "~" + name() : name(); }
std::string Atom::pretty() const { return negative() ? "¬" + name() : name(); }

Atom parseAtom(std::string_view text) {
    bool neg = false;
    while (!text.empty() && text.front() == '~') {
        neg = !neg;
        text.remove_prefix(1);
    }
    return Atom(text, neg);
}

// ---------------------------------------------------------------- Graph

Graph::Graph(const std::vector<std::pair<VertexId, Atom>>& vertices,
             const std::vector<std::pair<VertexId, VertexId>>& edges) {
    auto vs = vertices;
    std::sort(vs.begin(), vs.end(), [](auto& x, auto& y) { return x.first < y.first; });
    if (vs.size() > kMaxVertices) throw LimitError("graph has more than 64 vertices");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i > 0 && vs[i].first == vs[i - 1].first)
            throw std::invalid_argument("duplicate vertex id " + std::to_string(vs[i].first));
        ids_.push_back(vs[i].first);
        labels_.push_back(vs[i].second);
    }
    adj_.assign(ids_.size(), 0);
    for (auto [v, w] : edges) {
        int i = indexOf(v), j = indexOf(w);
        if (i < 0 || j < 0) throw std::invalid_argument("edge endpoint is not a vertex");
        if (i == j) throw std::invalid_argument("self-loop on vertex " + std::to_string(v));
        adj_[i] |= Mask{1} << j;
        adj_[j] |= Mask{1} << i;
    }
}

Graph Graph::fromParts(std::vector<VertexId> ids, std::vector<Atom> labels, std::vector<Mask> adj) {
    Graph g;
    g.ids_ = std::move(ids);
    g.labels_ = std::move(labels);
    g.adj_ = std::move(adj);
    return g;
}

int Graph::indexOf(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return -1;
    return static_cast<int>(it - ids_.begin());
}

Atom Graph::labelOf(VertexId v) const {
    int i = indexOf(v);
    if (i < 0) throw std::invalid_argument("unknown vertex " + std::to_string(v));
    return labels_[i];
}

bool Graph::hasEdge(VertexId v, VertexId w) const {
    int i = indexOf(v), j = indexOf(w);
    return i >= 0 && j >= 0 && adjacent(i, j);
}

std::size_t Graph::edgeCount() const {
    std::size_t c = 0;
    for (Mask r : adj_) c += std::popcount(r);
    return c / 2;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (adjacent(i, j)) out.emplace_back(ids_[i], ids_[j]);
    return out;
}

Mask Graph::maskOf(const std::vector<VertexId>& vs) const {
    Mask m = 0;
    for (VertexId v : vs) {
        int i = indexOf(v);
        if (i < 0) throw std::invalid_argument("unknown vertex " + std::to_string(v));
        m |= Mask{1} << i;
    }
    return m;
}

std::vector<VertexId> Graph::idsOf(Mask m) const {
    std::vector<VertexId> out;
    for (; m; m &= m - 1) out.push_back(ids_[std::countr_zero(m)]);
    return out;
}

// ---------------------------------------------------------------- operations

Graph singleton(Atom a, VertexId id) { return Graph::fromParts({id}, {a}, {0}); }

Graph dual(const Graph& g) {
    std::vector<Atom> labels;
    std::vector<Mask> adj;
    Mask full = g.all();
    for (std::size_t i = 0; i < g.size(); ++i) {
        labels.push_back(g.label(i).negated());
        adj.push_back(~g.row(i) & full & ~(Mask{1} << i));
    }
    return Graph::fromParts(g.ids(), labels, adj);
}

namespace {

Graph joinOrUnion(const Graph& g, const Graph& h, bool join) {
    if (g.size() + h.size() > kMaxVertices) throw LimitError("graph has more than 64 vertices");
    std::vector<std::tuple<VertexId, Atom, int, std::size_t>> vs;   // id, label, side, index
    for (std::size_t i = 0; i < g.size(); ++i) vs.emplace_back(g.id(i), g.label(i), 0, i);
    for (std::size_t i = 0; i < h.size(); ++i) vs.emplace_back(h.id(i), h.label(i), 1, i);
    std::sort(vs.begin(), vs.end());
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (std::get<0>(vs[i]) == std::get<0>(vs[i - 1])) throw std::invalid_argument("vertex ids are not disjoint");
    std::vector<std::size_t> posG(g.size()), posH(h.size());
    for (std::size_t k = 0; k < vs.size(); ++k) (std::get<2>(vs[k]) == 0 ? posG : posH)[std::get<3>(vs[k])] = k;
    Mask inG = 0, inH = 0;
    for (auto p : posG) inG |= Mask{1} << p;
    for (auto p : posH) inH |= Mask{1} << p;
    std::vector<VertexId> ids;
    std::vector<Atom> labels;
    std::vector<Mask> adj(vs.size(), 0);
    for (auto& t : vs) {
        ids.push_back(std::get<0>(t));
        labels.push_back(std::get<1>(t));
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        Mask r = 0;
        for (Mask m = g.row(i); m; m &= m - 1) r |= Mask{1} << posG[std::countr_zero(m)];
        adj[posG[i]] = r | (join ? inH : 0);
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        Mask r = 0;
        for (Mask m = h.row(i); m; m &= m - 1) r |= Mask{1} << posH[std::countr_zero(m)];
        adj[posH[i]] = r | (join ? inG : 0);
    }
    return Graph::fromParts(std::move(ids), std::move(labels), std::move(adj));
}

Graph shiftPast(const Graph& g, const Graph& h) {
    bool clash = false;
    for (VertexId v : h.ids())
        if (g.contains(v)) clash = true;
    if (!clash) return h;
    Bijection r;
    VertexId next = g.maxId() + 1;
    for (VertexId v : h.ids()) r[v] = next++;
    return renameVertices(h, r);
}

}  // namespace

Graph par(const Graph& g, const Graph& h) { return joinOrUnion(g, shiftPast(g, h), false); }
Graph tensor(const Graph& g, const Graph& h) { return joinOrUnion(g, shiftPast(g, h), true); }
Graph parKeep(const Graph& g, const Graph& h) { return joinOrUnion(g, h, false); }
Graph tensorKeep(const Graph& g, const Graph& h) { return joinOrUnion(g, h, true); }

Graph composeVia(const Graph& g, const std::vector<Graph>& parts) {
    if (parts.size() != g.size())
        throw std::invalid_argument("composeVia: " + std::to_string(parts.size()) + " parts for a graph with " +
                                    std::to_string(g.size()) + " vertices");
    std::vector<std::pair<VertexId, Atom>> vs;
    std::vector<std::pair<VertexId, VertexId>> es;
    std::vector<std::vector<VertexId>> slotIds(parts.size());
    VertexId next = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Graph& p = parts[i];
        Bijection r;
        for (std::size_t k = 0; k < p.size(); ++k) {
            r[p.id(k)] = next;
            vs.emplace_back(next, p.label(k));
            slotIds[i].push_back(next++);
        }
        for (auto [v, w] : p.edges()) es.emplace_back(r[v], r[w]);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (g.adjacent(i, j))
                for (VertexId v : slotIds[i])
                    for (VertexId w : slotIds[j]) es.emplace_back(v, w);
    return Graph(vs, es);
}

Graph induced(const Graph& g, Mask m) {
    m &= g.all();
    std::vector<VertexId> ids;
    std::vector<Atom> labels;
    std::vector<Mask> adj;
    std::vector<int> pos(g.size(), -1);
    int k = 0;
    for (Mask r = m; r; r &= r - 1) pos[std::countr_zero(r)] = k++;
    for (Mask r = m; r; r &= r - 1) {
        int i = std::countr_zero(r);
        ids.push_back(g.id(i));
        labels.push_back(g.label(i));
        Mask row = 0;
        for (Mask n = g.row(i) & m; n; n &= n - 1) row |= Mask{1} << pos[std::countr_zero(n)];
        adj.push_back(row);
    }
    return Graph::fromParts(std::move(ids), std::move(labels), std::move(adj));
}

Graph removeVertices(const Graph& g, Mask m) { return induced(g, g.all() & ~m); }

Graph renameVertices(const Graph& g, const Bijection& rename) {
    std::vector<std::pair<VertexId, Atom>> vs;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto it = rename.find(g.id(i));
        vs.emplace_back(it == rename.end() ? g.id(i) : it->second, g.label(i));
    }
    std::vector<std::pair<VertexId, VertexId>> es;
    for (auto [v, w] : g.edges()) {
        auto iv = rename.find(v), iw = rename.find(w);
        es.emplace_back(iv == rename.end() ? v : iv->second, iw == rename.end() ? w : iw->second);
    }
    return Graph(vs, es);
}

Graph addEdges(const Graph& g, Mask from, Mask to) {
    std::vector<Mask> adj = g.rows();
    for (Mask f = from; f; f &= f - 1) {
        int i = std::countr_zero(f);
        for (Mask t = to; t; t &= t - 1) {
            int j = std::countr_zero(t);
            if (i == j) continue;
            adj[i] |= Mask{1} << j;
            adj[j] |= Mask{1} << i;
        }
    }
    return Graph::fromParts(g.ids(), g.labels(), std::move(adj));
}

Graph removeEdges(const Graph& g, Mask from, Mask to) {
    std::vector<Mask> adj = g.rows();
    for (Mask f = from; f; f &= f - 1) {
        int i = std::countr_zero(f);
        for (Mask t = to; t; t &= t - 1) {
            int j = std::countr_zero(t);
            adj[i] &= ~(Mask{1} << j);
            adj[j] &= ~(Mask{1} << i);
        }
    }
    return Graph::fromParts(g.ids(), g.labels(), std::move(adj));
}

Graph relabel(const Graph& g, Atom a) {
    return Graph::fromParts(g.ids(), std::vector<Atom>(g.size(), a), g.rows());
}

bool isModule(const Graph& g, Mask s) {
    s &= g.all();
    for (Mask out = g.all() & ~s; out; out &= out - 1) {
        Mask r = g.row(std::countr_zero(out)) & s;
        if (r != 0 && r != s) return false;
    }
    return true;
}

bool isModule(const Graph& g, const std::vector<VertexId>& s) { return isModule(g, g.maskOf(s)); }

Mask neighbourhood(const Graph& g, Mask s) {
    Mask n = 0;
    for (Mask r = s; r; r &= r - 1) n |= g.row(std::countr_zero(r));
    return n & ~s;
}

std::vector<Mask> enumerateModules(const Graph& g, std::size_t limit) {
    if (g.size() > limit) throw LimitError("enumerateModules: " + std::to_string(g.size()) + " vertices exceeds limit " +
                                           std::to_string(limit));
    std::vector<Mask> out;
    Mask n = Mask{1} << g.size();
    for (Mask s = 0; s < n; ++s)
        if (isModule(g, s)) out.push_back(s);
    return out;
}

namespace {

std::vector<Mask> componentsOf(const std::vector<Mask>& rows, Mask m) {
    std::vector<Mask> out;
    Mask left = m;
    while (left) {
        Mask comp = left & (~left + 1);
        Mask frontier = comp;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= rows[std::countr_zero(f)];
            next &= m & ~comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

}  // namespace

std::vector<Mask> components(const Graph& g, Mask m) { return componentsOf(g.rows(), m & g.all()); }

std::vector<Mask> coComponents(const Graph& g, Mask m) {
    std::vector<Mask> co(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) co[i] = ~g.row(i) & g.all() & ~(Mask{1} << i);
    return componentsOf(co, m & g.all());
}

std::size_t componentCount(const Graph& g, Mask m) { return components(g, m).size(); }

SizeMeasure sizeMeasure(const Graph& g) {
    std::size_t n = g.size();
    return {n, n * (n - (n ? 1 : 0)) / 2 - g.edgeCount()};
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
    const Graph& g;
    const Graph& h;
    std::vector<int> orderG;   // g indices in search order
    std::vector<int> map;      // g index -> h index
    Mask usedH = 0;
    bool all = false;
    std::vector<std::vector<int>> found;

    IsoSearch(const Graph& g_, const Graph& h_) : g(g_), h(h_), map(g_.size(), -1) {
        // BFS order from high-degree vertices keeps adjacency constraints tight
        Mask seen = 0;
        std::vector<int> byDegree(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) byDegree[i] = static_cast<int>(i);
        std::stable_sort(byDegree.begin(), byDegree.end(),
                         [&](int a, int b) { return std::popcount(g.row(a)) > std::popcount(g.row(b)); });
        for (int s : byDegree) {
            if ((seen >> s) & 1u) continue;
            std::vector<int> queue{s};
            seen |= Mask{1} << s;
            for (std::size_t q = 0; q < queue.size(); ++q) {
                int v = queue[q];
                orderG.push_back(v);
                for (int w : byDegree)
                    if (g.adjacent(v, w) && !((seen >> w) & 1u)) {
                        seen |= Mask{1} << w;
                        queue.push_back(w);
                    }
            }
        }
    }

    bool extend(std::size_t depth) {
        if (depth == orderG.size()) {
            found.push_back(map);
            return !all;
        }
        int v = orderG[depth];
        int deg = std::popcount(g.row(v));
        for (std::size_t w = 0; w < h.size(); ++w) {
            if ((usedH >> w) & 1u) continue;
            if (h.label(w) != g.label(v) || std::popcount(h.row(w)) != deg) continue;
            bool ok = true;
            for (std::size_t k = 0; k < depth && ok; ++k) {
                int u = orderG[k];
                if (g.adjacent(u, v) != h.adjacent(map[u], w)) ok = false;
            }
            if (!ok) continue;
            map[v] = static_cast<int>(w);
            usedH |= Mask{1} << w;
            if (extend(depth + 1)) return true;
            usedH &= ~(Mask{1} << w);
            map[v] = -1;
        }
        return false;
    }
};

bool sameInvariants(const Graph& g, const Graph& h) {
    if (g.size() != h.size() || g.edgeCount() != h.edgeCount()) return false;
    std::vector<std::pair<std::uint32_t, int>> a, b;
    for (std::size_t i = 0; i < g.size(); ++i) {
        a.emplace_back(g.label(i).code(), std::popcount(g.row(i)));
        b.emplace_back(h.label(i).code(), std::popcount(h.row(i)));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace

std::optional<Bijection> findIsomorphism(const Graph& g, const Graph& h) {
    if (!sameInvariants(g, h)) return std::nullopt;
    IsoSearch s(g, h);
    s.extend(0);
    if (s.found.empty()) return std::nullopt;
    Bijection f;
    for (std::size_t i = 0; i < g.size(); ++i) f[g.id(i)] = h.id(s.found[0][i]);
    return f;
}

bool checkIsomorphism(const Graph& g, const Graph& h, const Bijection& f) {
    if (g.size() != h.size() || f.size() != g.size()) return false;
    std::vector<int> map(g.size(), -1);
    Mask hit = 0;
    for (auto [v, w] : f) {
        int i = g.indexOf(v), j = h.indexOf(w);
        if (i < 0 || j < 0 || ((hit >> j) & 1u)) return false;
        hit |= Mask{1} << j;
        map[i] = j;
        if (g.label(i) != h.label(j)) return false;
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t k = i + 1; k < g.size(); ++k)
            if (g.adjacent(i, k) != h.adjacent(map[i], map[k])) return false;
    return true;
}

std::vector<Bijection> automorphismGroup(const Graph& g, std::size_t limit) {
    if (g.size() > limit) throw LimitError("automorphismGroup: graph too large");
    IsoSearch s(g, g);
    s.all = true;
    s.extend(0);
    std::vector<Bijection> out;
    for (auto& m : s.found) {
        Bijection f;
        for (std::size_t i = 0; i < g.size(); ++i) f[g.id(i)] = g.id(m[i]);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph canonicalGraph(const Graph& g) {
    auto cl = canonicalLabeling(g);
    Bijection r;
    for (std::size_t k = 0; k < cl.order.size(); ++k) r[g.id(cl.order[k])] = static_cast<VertexId>(k);
    return renameVertices(g, r);
}

std::string canonicalForm(const Graph& g) { return canonicalLabeling(g).key; }

// ---------------------------------------------------------------- contexts

Graph plug(const GraphContext& c, const Graph& m) {
    Graph mm = m;
    bool clash = false;
    for (VertexId v : m.ids())
        if (c.host.contains(v)) clash = true;
    if (clash) {
        Bijection r;
        VertexId next = c.host.maxId() + 1;
        for (VertexId v : m.ids()) r[v] = next++;
        mm = renameVertices(m, r);
    }
    Graph u = parKeep(c.host, mm);
    return addEdges(u, u.maskOf(mm.ids()), u.maskOf(c.holeNeighbors));
}

GraphContext contextOf(const Graph& g, Mask s) {
    GraphContext c;
    c.host = removeVertices(g, s);
    c.holeNeighbors = g.idsOf(neighbourhood(g, s));
    return c;
}

// ---------------------------------------------------------------- text formats

Graph parseGraph(std::string_view text) {
    std::vector<std::pair<VertexId, Atom>> vs;
    std::vector<std::pair<VertexId, VertexId>> es;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNo = 0;
    auto parseId = [&](const std::string& tok) -> VertexId {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError("expected a vertex id, got '" + tok + "'", lineNo);
        unsigned long v = std::stoul(tok);
        if (v > 0xffffffffUL) throw ParseError("vertex id out of range", lineNo);
        return static_cast<VertexId>(v);
    };
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        std::string a, b, extra;
        if (kw == "vertex") {
            if (!(ls >> a >> b) || (ls >> extra)) throw ParseError("expected 'vertex <id> <atom>'", lineNo);
            try {
                vs.emplace_back(parseId(a), parseAtom(b));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), lineNo);
            }
        } else if (kw == "edge") {
            if (!(ls >> a >> b) || (ls >> extra)) throw ParseError("expected 'edge <id> <id>'", lineNo);
            es.emplace_back(parseId(a), parseId(b));
        } else {
            throw ParseError("unknown statement '" + kw + "'", lineNo);
        }
    }
    try {
        return Graph(vs, es);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineNo);
    }
}

std::string formatGraph(const Graph& g) {
    std::ostringstream out;
    for (std::size_t i = 0; i < g.size(); ++i) out << "vertex " << g.id(i) << ' ' << g.label(i).str() << '\n';
    for (auto [v, w] : g.edges()) out << "edge " << v << ' ' << w << '\n';
    return out.str();
}

std::string toDot(const Graph& g, std::string_view name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        out << "  v" << g.id(i) << " [label=\"" << g.label(i).pretty() << "\"];\n";
    for (auto [v, w] : g.edges()) out << "  v" << v << " -- v" << w << ";\n";
    out << "}\n";
    return out.str();
}

std::string describe(const Graph& g) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? " " : "") << g.id(i) << ':' << g.label(i).str();
    out << " |";
    for (auto [v, w] : g.edges()) out << ' ' << v << '-' << w;
    out << "}";
    return out.str();
}

}  // namespace gs
