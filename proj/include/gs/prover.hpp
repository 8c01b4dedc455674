#pragma once

#include "gs/inference.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gs {

struct ProverConfig {
    RuleSet rules = RuleSet::gs();   // only ai_down, ss_down, p_down, ss_up and g_down are searched
    std::size_t vertexLimit = 12;
    std::size_t memoLimit = 4'000'000;
    std::chrono::milliseconds timeBudget{0};   // 0 means no budget
    bool analyticPruning = false;
    // Decide tensor-rooted and prime-rooted goals from their parts instead of searching them.
    bool shortcuts = true;
    // Search ss_down only with a single Par child as A; the other instances are composites.
    bool reducedSwitch = true;
    // Decide P4-free subgoals with a sequent search for MLL with mix, and search P4-free goals only
    // through P4-free premises. Relies on GS being conservative over that calculus.
    bool cographOracle = true;
};

enum class Verdict { Provable, Refuted, Limit };
std::string verdictName(Verdict v);

struct ProofResult {
    Verdict verdict = Verdict::Refuted;
    std::optional<Derivation> proof;
    std::string message;   // set for Limit
    std::size_t visited = 0;
};

// Cheap necessary conditions; true means g has no proof under any searchable rule set.
// Every ai_down removes a non-adjacent dual pair and no rule adds edges top-down, so a proof
// pairs up all vertices into non-adjacent dual pairs.
bool refutedByFilters(const Graph& g);

// Provability of a P4-free graph read as a sequent of MLL with mix; throws std::invalid_argument
// when g has a prime node.
bool mixProvable(const Graph& g);

// Keeps its memo across calls as long as the configuration is unchanged.
class Prover {
public:
    explicit Prover(ProverConfig cfg = {});
    ~Prover();
    Prover(Prover&&) noexcept;
    Prover& operator=(Prover&&) noexcept;

    ProofResult run(const Graph& g);
    // throws LimitError
    bool provable(const Graph& g);
    std::optional<Derivation> prove(const Graph& g);

    const ProverConfig& config() const { return cfg_; }
    std::size_t memoSize() const;

private:
    struct Impl;
    ProverConfig cfg_;
    std::unique_ptr<Impl> impl_;
};

// Throws LimitError when a limit is hit, so "absent" always means "not provable".
std::optional<Derivation> prove(const Graph& g, const ProverConfig& cfg = {});
// proves par(dual(g), h)
std::optional<Derivation> proveImplication(const Graph& g, const Graph& h, const ProverConfig& cfg = {});
// GS u {ss_up} with connector pruning
std::optional<Derivation> proveAnalytic(const Graph& g, ProverConfig cfg = {});

// Canonical forms of the provable graphs on exactly n vertices (n <= 6) with labels from alphabet.
std::vector<std::string> enumerateProvable(std::size_t n, const std::vector<Atom>& alphabet,
                                           const ProverConfig& cfg = {});

}  // namespace gs
