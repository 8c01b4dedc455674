#pragma once

#include "gs/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gs {

enum class Rule { AiDown, SsDown, PDown, AiUp, SsUp, PUp, IDown, IUp, Sw, GDown, GUp, Iso };

std::string ruleName(Rule r);        // ai_down, ss_down, ...
std::string rulePretty(Rule r);      // ai↓, ss↓, ...
std::optional<Rule> parseRule(std::string_view s);   // accepts either spelling

class RuleSet {
public:
    constexpr RuleSet() = default;
    constexpr RuleSet(std::initializer_list<Rule> rs) {
        for (Rule r : rs) bits_ |= bit(r);
    }

    constexpr bool contains(Rule r) const { return (bits_ & bit(r)) != 0; }
    constexpr RuleSet with(Rule r) const {
        RuleSet s = *this;
        s.bits_ |= bit(r);
        return s;
    }
    friend constexpr bool operator==(RuleSet, RuleSet) = default;

    static constexpr RuleSet gs() { return {Rule::AiDown, Rule::SsDown, Rule::PDown, Rule::Iso}; }
    static constexpr RuleSet gsSsUp() { return gs().with(Rule::SsUp); }
    static constexpr RuleSet gsGDown() { return gs().with(Rule::GDown); }
    static constexpr RuleSet sgs() { return gs().with(Rule::AiUp).with(Rule::SsUp).with(Rule::PUp); }
    static constexpr RuleSet all() {
        return {Rule::AiDown, Rule::SsDown, Rule::PDown, Rule::AiUp, Rule::SsUp, Rule::PUp,
                Rule::IDown,  Rule::IUp,    Rule::Sw,    Rule::GDown, Rule::GUp,  Rule::Iso};
    }

    std::string str() const;

private:
    static constexpr unsigned bit(Rule r) { return 1u << static_cast<unsigned>(r); }
    unsigned bits_ = 0;
};

// Which fields are used depends on the rule:
//   ai:     v, w
//   ss:     a = A, b = B, s = S
//   sw:     a = A, b = B, s = C   (conclusion A|(B*C), premise (A|B)*C)
//   i:      a = U, b = W, map : U -> W
//   p, g:   quotient with slot i = i-th vertex, ms[i], ns[i]; side is 'M' or 'N' for p
//   iso:    map : premise ids -> conclusion ids
struct StepParams {
    VertexId v = 0, w = 0;
    std::vector<VertexId> a, b, s;
    Graph quotient;
    std::vector<std::vector<VertexId>> ms, ns;
    char side = 'M';
    Bijection map;
};

// Vertex ids are shared between premise and conclusion.
struct ProofStep {
    Rule rule = Rule::Iso;
    Graph premise;
    Graph conclusion;
    std::vector<VertexId> position;
    StepParams params;
};

// Steps run top-down: steps.front().premise is the premise of the derivation.
struct Derivation {
    Graph premise;
    Graph conclusion;
    std::vector<ProofStep> steps;

    std::size_t length() const;   // inference steps, isomorphisms not counted
    bool isProof() const { return premise.empty(); }
};

// Empty string when the step is a valid instance of a rule in `rules`.
std::string checkStep(const ProofStep& step, RuleSet rules = RuleSet::all());

struct CheckResult {
    bool ok = true;
    std::size_t failedStep = 0;   // 1-based, 0 when the failure is not tied to a step
    std::string message;
    explicit operator bool() const { return ok; }
};
CheckResult checkDerivation(const Derivation& d, RuleSet rules = RuleSet::all());

// ---- bottom-up premise enumeration; each result is a step whose conclusion is g

std::vector<ProofStep> premisesAiDown(const Graph& g);
// every ss↓ instance, deduplicated by the canonical form of the premise
std::vector<ProofStep> premisesSsDown(const Graph& g, std::size_t limit = 16);
// the instances with A a single child of a Par node and S meeting every child in B;
// every other instance is a composite of these
std::vector<ProofStep> premisesSsDownReduced(const Graph& g);
std::vector<ProofStep> premisesPDown(const Graph& g, std::size_t limit = 16);
std::vector<ProofStep> premisesGDown(const Graph& g, std::size_t limit = 8);
std::vector<ProofStep> premisesSsUp(const Graph& g, std::size_t limit = 16);

// ---- top-down use of the up rules

// all instances with premise g of ai↑, ss↑ or p↑, obtained as duals of down instances on dual(g)
std::vector<ProofStep> upInstances(const Graph& g, Rule rule);
// throws std::invalid_argument when params do not describe a redex of g
Graph applyUpRule(const Graph& g, Rule rule, const StepParams& params);
// the dual instance: premise dual(conclusion), conclusion dual(premise)
ProofStep dualStep(const ProofStep& s);

// ---- derivation building

Derivation emptyDerivation(const Graph& g);
// append d2 below d1; d1.conclusion must equal d2.premise
Derivation compose(Derivation d1, const Derivation& d2);
// the derivation C<premise>R -> C<conclusion>R; ids must not clash with the host
Derivation liftDerivation(const Derivation& d, const GraphContext& c);
Derivation renameDerivation(const Derivation& d, const Bijection& r);

// ∅ -> par(dual(g), g)
Derivation deriveIdentity(const Graph& g);
// (M1|N1)*...*(Mn|Nn) -> par(composeVia(g, Ms), composeVia(dual(g), Ns)); requires Mi=∅ => Ni=∅
Derivation deriveGDown(const Graph& g, const std::vector<Graph>& ms, const std::vector<Graph>& ns);

// Replaces every i↓ step by ai↓, ss↓ and p↓ steps.
Derivation expandIdentities(const Derivation& d);

// ---- text format

std::string formatDerivation(const Derivation& d);
Derivation parseDerivation(std::string_view text);

}  // namespace gs
