#pragma once

#include "gs/graph.hpp"

#include <string>
#include <vector>

namespace gs {

struct MDTree {
    enum class Kind { Leaf, Par, Tensor, Prime };

    Kind kind = Kind::Leaf;
    Mask vertices = 0;        // indices into the decomposed graph
    VertexId vertex = 0;      // Leaf only
    Atom atom;                // Leaf only
    Graph quotient;           // Prime only; vertex i stands for children[i]
    std::vector<MDTree> children;

    bool isLeaf() const { return kind == Kind::Leaf; }
};

// Throws std::invalid_argument on the empty graph.
MDTree decompose(const Graph& g);
MDTree decompose(const Graph& g, Mask m);   // of the induced subgraph g[m]

Graph recompose(const MDTree& t);

bool isPrime(const Graph& g);
bool isP4Free(const Graph& g);
bool hasPrimeNode(const MDTree& t);

// The 2-vertex connectors, with labels set to a placeholder atom.
Graph parConnector();
Graph tensorConnector();
// P4 as a path on slots 0-1-2-3.
Graph pathP4();

// Quotients of every internal node; Par and Tensor contribute the 2-vertex graphs.
std::vector<Graph> connectors(const MDTree& t);
// Canonical forms of the prime graphs that are induced subgraphs of some connector
// of g (labels ignored), sorted.
std::vector<std::string> subconnectors(const Graph& g);
// canonical key of an unlabelled prime graph, used to compare connectors
std::string connectorKey(const Graph& p);

// Formula-style printer: P4<f|g, P4<a,b,c,d>, ~f*~g, P4<~a,~b,~c,~d>>
std::string formatTree(const MDTree& t);

}  // namespace gs
