#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gs {

using VertexId = std::uint32_t;
using Mask = std::uint64_t;   // vertex subsets, by index into a Graph
using Bijection = std::map<VertexId, VertexId>;

inline constexpr std::size_t kMaxVertices = 64;

class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Atoms are interned. code = 2 * symbol + (negative ? 1 : 0), so negation is code ^ 1.
class Atom {
public:
    Atom() = default;
    explicit Atom(std::string_view name, bool negative = false);
    static Atom fromCode(std::uint32_t code);

    const std::string& name() const;
    bool negative() const { return (code_ & 1u) != 0; }
    std::uint32_t symbol() const { return code_ >> 1; }
    std::uint32_t code() const { return code_; }
    Atom negated() const { return fromCode(code_ ^ 1u); }
    std::string str() const;       // "a" or "~a"
    std::string pretty() const;    // "a" or "¬a"

    friend bool operator==(Atom, Atom) = default;
    friend auto operator<=>(Atom, Atom) = default;

private:
    std::uint32_t code_ = 0;
};

Atom parseAtom(std::string_view text);

struct SizeMeasure {
    std::size_t vertexCount = 0;
    std::size_t dualEdgeCount = 0;
    friend auto operator<=>(const SizeMeasure&, const SizeMeasure&) = default;
};

// Simple undirected labelled graph. Vertices are kept sorted by id; index i
// refers to the i-th smallest id. Adjacency is a bitset row per vertex.
class Graph {
public:
    Graph() = default;
    Graph(const std::vector<std::pair<VertexId, Atom>>& vertices,
          const std::vector<std::pair<VertexId, VertexId>>& edges);

    // ids must be strictly increasing; adjacency must be symmetric and irreflexive
    static Graph fromParts(std::vector<VertexId> ids, std::vector<Atom> labels, std::vector<Mask> adj);

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    Mask all() const { return size() == 64 ? ~Mask{0} : ((Mask{1} << size()) - 1); }

    VertexId id(std::size_t i) const { return ids_[i]; }
    Atom label(std::size_t i) const { return labels_[i]; }
    Mask row(std::size_t i) const { return adj_[i]; }
    bool adjacent(std::size_t i, std::size_t j) const { return (adj_[i] >> j) & 1u; }

    const std::vector<VertexId>& ids() const { return ids_; }
    const std::vector<Atom>& labels() const { return labels_; }
    const std::vector<Mask>& rows() const { return adj_; }

    // -1 when absent
    int indexOf(VertexId v) const;
    bool contains(VertexId v) const { return indexOf(v) >= 0; }
    Atom labelOf(VertexId v) const;
    bool hasEdge(VertexId v, VertexId w) const;
    VertexId maxId() const { return ids_.empty() ? 0 : ids_.back(); }

    std::size_t edgeCount() const;
    std::vector<std::pair<VertexId, VertexId>> edges() const;   // (v,w) with v<w, lexicographic

    Mask maskOf(const std::vector<VertexId>& vs) const;          // throws on unknown id
    std::vector<VertexId> idsOf(Mask m) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<VertexId> ids_;
    std::vector<Atom> labels_;
    std::vector<Mask> adj_;
};

Graph singleton(Atom a, VertexId id = 0);

Graph dual(const Graph& g);
// h's ids are shifted past g's when they clash
Graph par(const Graph& g, const Graph& h);
Graph tensor(const Graph& g, const Graph& h);
// disjoint union/join that requires disjoint ids and keeps them
Graph parKeep(const Graph& g, const Graph& h);
Graph tensorKeep(const Graph& g, const Graph& h);

// Slot i is the i-th vertex of g in id order.
Graph composeVia(const Graph& g, const std::vector<Graph>& parts);

Graph induced(const Graph& g, Mask m);
Graph removeVertices(const Graph& g, Mask m);
Graph renameVertices(const Graph& g, const Bijection& rename);
Graph addEdges(const Graph& g, Mask from, Mask to);     // all edges between the two sets
Graph removeEdges(const Graph& g, Mask from, Mask to);
Graph relabel(const Graph& g, Atom a);                  // every vertex gets label a

bool isModule(const Graph& g, Mask s);
bool isModule(const Graph& g, const std::vector<VertexId>& s);
Mask neighbourhood(const Graph& g, Mask s);             // vertices outside s adjacent to some vertex of s
std::vector<Mask> enumerateModules(const Graph& g, std::size_t limit = 16);

std::size_t componentCount(const Graph& g, Mask m);
std::vector<Mask> components(const Graph& g, Mask m);
std::vector<Mask> coComponents(const Graph& g, Mask m);

std::optional<Bijection> findIsomorphism(const Graph& g, const Graph& h);
bool checkIsomorphism(const Graph& g, const Graph& h, const Bijection& f);
std::vector<Bijection> automorphismGroup(const Graph& g, std::size_t limit = 16);

struct CanonicalLabeling {
    std::string key;
    std::vector<int> order;   // order[k] = index in g of canonical position k
};
CanonicalLabeling canonicalLabeling(const Graph& g);
std::string canonicalForm(const Graph& g);
// g renamed so that canonical position k carries id k
Graph canonicalGraph(const Graph& g);

SizeMeasure sizeMeasure(const Graph& g);

// C<.>R: a host graph and the set of host vertices adjacent to the hole
struct GraphContext {
    Graph host;
    std::vector<VertexId> holeNeighbors;
};
Graph plug(const GraphContext& c, const Graph& m);
// the context obtained by cutting the module s out of g
GraphContext contextOf(const Graph& g, Mask s);

Graph parseGraph(std::string_view text);
std::string formatGraph(const Graph& g);
std::string toDot(const Graph& g, std::string_view name = "G");
std::string describe(const Graph& g);   // one-line summary, for messages

}  // namespace gs
