#pragma once

#include "gs/inference.hpp"
#include "gs/prover.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gs {

struct MetaConfig {
    ProverConfig prover;
    std::size_t closureLimit = 200'000;   // graphs kept by upwardClosure before LimitError
    std::size_t vertexLimit = 8;          // on the graph whose closure is scanned
};

struct UpwardEntry {
    Graph graph;
    Derivation toGoal;   // graph -> the goal, in GS
};

// Every graph X, one per isomorphism class, with a GS derivation X -> g; breadth first, so the
// derivations are as short as possible. Throws LimitError past the configured limits.
std::vector<UpwardEntry> upwardClosure(const Graph& g, const MetaConfig& cfg = {});

enum class WitnessKind { Tensor, MultiTensor, PrimeA, PrimeB, Atomic, ContextReduction };
std::string witnessKindName(WitnessKind k);

struct NamedGraph {
    std::string name;
    Graph graph;
};

// goal = par(g, principal), or plug(G<.>S, A) for context reduction.
// The context derivation runs from plug(context, hole) to g.
struct SplitWitness {
    WitnessKind kind = WitnessKind::Tensor;
    Graph goal;
    Graph g;
    Graph principal;
    GraphContext context;
    Derivation contextProof;           // ∅ -> context.host
    Graph hole;                        // what sits in the hole: the pieces recombined
    std::vector<NamedGraph> pieces;
    std::vector<Graph> partners;       // pieceProofs[i] proves par(pieces[i], partners[i])
    std::vector<Derivation> pieceProofs;
    Derivation contextDerivation;
    std::size_t slot = 0;              // PrimeB: the slot whose module is split off
    // ContextReduction: the derivation is stated for a one-vertex placeholder in place of A
    VertexId placeholder = 0;
};

// Throws LimitError when the bounded search cannot finish. Absent means no witness exists in the
// closure, which for a provable input contradicts the corresponding lemma.
std::optional<SplitWitness> splittingTensorWitness(const Graph& g, const Graph& a, const Graph& b,
                                                   const MetaConfig& cfg = {});
std::optional<SplitWitness> multiTensorSplittingWitness(const Graph& g, const std::vector<Graph>& factors,
                                                        const MetaConfig& cfg = {});
// p prime with at least two vertices; ms[i] goes into slot i (the i-th vertex of p) and must be non-empty
std::optional<SplitWitness> splittingPrimeWitness(const Graph& g, const Graph& p, const std::vector<Graph>& ms,
                                                  const MetaConfig& cfg = {});
std::optional<SplitWitness> atomicSplittingWitness(const Graph& g, Atom a, const MetaConfig& cfg = {});
std::optional<SplitWitness> contextReductionWitness(const GraphContext& gContext, const Graph& a,
                                                    const MetaConfig& cfg = {});

// The context derivation of a context reduction witness with x in place of the placeholder;
// absent when the steps do not survive the substitution.
std::optional<Derivation> instantiateHole(const SplitWitness& w, const Graph& x);
// the empty graph, a fresh atom and the selected module itself
std::vector<Graph> holeProbes(const SplitWitness& w);

// Empty when every component derivation checks in GS and has the shape the kind requires.
std::string verifyWitness(const SplitWitness& w);
// A GS proof of w.goal put together from the parts.
Derivation reassemble(const SplitWitness& w);

std::string formatWitness(const SplitWitness& w);

}  // namespace gs
