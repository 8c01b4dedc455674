#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gs {

// A partition of {1..n}; blocks sorted, and ordered by their least element.
struct Partition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    static Partition make(int n, std::vector<std::vector<int>> blocks);   // validates and normalises
    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

// A non-empty set of partitions of the same {1..n}; kept sorted and without repeats.
struct PartitionSet {
    int n = 0;
    std::vector<Partition> parts;

    static PartitionSet make(int n, std::vector<Partition> parts);
    bool contains(const Partition& p) const;
    friend bool operator==(const PartitionSet&, const PartitionSet&) = default;
};

std::vector<Partition> allPartitions(int n);   // n <= 8

// Literal syntax: {{1,3},{2},{4}} and {{{1,2},{3,4}},{{1,4},{2,3}}}; throws ParseError.
Partition parsePartition(std::string_view text);
PartitionSet parsePartitionSet(std::string_view text);
std::string formatPartition(const Partition& p);
std::string formatPartitionSet(const PartitionSet& s);

// Vertices are the blocks of p (0..|p|-1) followed by those of q; one edge per shared element.
struct IncidenceGraph {
    int pBlocks = 0;
    int qBlocks = 0;
    std::vector<std::pair<int, int>> edges;   // (block of p, |p| + block of q)

    int vertexCount() const { return pBlocks + qBlocks; }
    int componentCount() const;
    bool acyclic() const;   // two parallel edges form a cycle
};

// These throw std::invalid_argument when the sizes differ.
IncidenceGraph incidenceGraph(const Partition& p, const Partition& q);
bool orthogonal(const Partition& p, const Partition& q);
bool orthogonalSets(const PartitionSet& p, const PartitionSet& q);
// every partition of {1..n} orthogonal to all members of p; may be empty
std::vector<Partition> orthogonalComplement(const PartitionSet& p);

// sigma[i-1] is the image of i
using Permutation = std::vector<int>;
Partition permute(const Partition& p, const Permutation& sigma);
PartitionSet permute(const PartitionSet& s, const Permutation& sigma);
std::vector<Permutation> stabilizerGroup(const PartitionSet& s);   // in lexicographic order
std::string formatCycles(const Permutation& sigma);               // "(1)", "(1,2)(3,4)"
Permutation parseCycles(std::string_view text, int n);
Permutation composePermutations(const Permutation& f, const Permutation& g);   // f after g
Permutation inversePermutation(const Permutation& f);

// The partition set of a par/tensor formula whose leaves are 1..n: the ways a cut-free MLL
// derivation can distribute the leaves over the premises.
struct LeafFormula {
    enum class Kind { Leaf, Par, Tensor } kind = Kind::Leaf;
    int leaf = 0;
    std::vector<LeafFormula> children;   // two for Par and Tensor
};
std::vector<Partition> formulaPartitions(const LeafFormula& f, int n);
// Partition sets of all formulas on the leaves 1..n, each leaf used once.
std::vector<PartitionSet> decomposableSets(int n);
bool isDecomposable(const PartitionSet& s);

struct ConnectiveCensus {
    std::size_t dualPairs = 0;                   // {P, Q} with Q = P-perp and P = Q-perp
    std::size_t nonDecomposableDualPairs = 0;
    std::vector<std::pair<PartitionSet, PartitionSet>> nonDecomposable;
};
// Brute force over every non-empty subset of the partitions of {1..n}; n <= 4.
ConnectiveCensus connectiveCensus(int n);

// Instances of the four-vertex prime graph on the vertices 1..4 and the dual pairs they form.
struct PrimeCensus {
    std::size_t instances = 0;
    std::size_t dualPairs = 0;
};
PrimeCensus primeGraphCensus();

PartitionSet g4Partitions();

}  // namespace gs
