#pragma once

#include "gs/connectives.hpp"
#include "gs/formula.hpp"
#include "gs/inference.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gs {

// Unit-free formulas with the four-ary connective G4 and its dual, in negation normal form.
struct GenFormula {
    enum class Kind { Atom, Par, Tensor, G4, G4Dual };
    Kind kind = Kind::Atom;
    Atom atom;
    std::vector<GenFormula> children;   // 2 for Par/Tensor, 4 for G4/G4Dual

    static GenFormula fromAtom(Atom a);
    static GenFormula make(Kind k, std::vector<GenFormula> children);
    static GenFormula fromFormula(const Formula& f);   // throws std::invalid_argument on the unit

    GenFormula negated() const;
    bool hasG4() const;
    std::size_t literalCount() const;

    friend bool operator==(const GenFormula&, const GenFormula&) = default;
};

using Sequent = std::vector<GenFormula>;

// The formula grammar without `1`, plus `G4(f,f,f,f)` and the dual connective `~G4(f,f,f,f)`.
// Elsewhere `~` applies De Morgan, so ~G4(a,b,c,d) is the negation of G4(~a,~b,~c,~d).
GenFormula parseGenFormula(std::string_view text);
// comma-separated formulas; throws ParseError
Sequent parseSequent(std::string_view text);
std::string formatGenFormula(const GenFormula& f);
std::string formatSequent(const Sequent& s);

// The partitions describing G4 and its dual. The dual is the orthogonal complement of the first.
const PartitionSet& g4RuleSet();
const PartitionSet& g4DualRuleSet();

struct SequentProof {
    std::string rule;   // ax, par, tensor, mix, G4{..}, ~G4{..}
    Sequent conclusion;
    std::vector<SequentProof> premises;

    std::size_t size() const;
};
// one line per rule instance, conclusion first, premises indented
std::string formatSequentProof(const SequentProof& p);
// Checks every rule instance against its premises.
bool checkSequentProof(const SequentProof& p);

struct SequentConfig {
    std::size_t literalLimit = 24;
    std::size_t nodeLimit = 2'000'000;   // sequents examined before LimitError
};

// MLL with mix (ax, tensor, par, mix). Throws std::invalid_argument on G4, LimitError past the limits.
std::optional<SequentProof> proveMll(const Sequent& s, const SequentConfig& cfg = {});
// The same system with one rule per partition of G4 and of its dual.
std::optional<SequentProof> proveMllG4(const Sequent& s, const SequentConfig& cfg = {});

struct ConservativityResult {
    bool sequentProvable = false;
    bool graphProvable = false;
    std::optional<SequentProof> sequentProof;
    std::optional<Derivation> graphProof;

    bool agree() const { return sequentProvable == graphProvable; }
};
// Runs both provers on a unit-free formula; the graph prover is run without the shortcuts that
// rely on the sequent calculus.
ConservativityResult conservativityCheck(const Formula& f, const SequentConfig& cfg = {});

// ⊢ C(x1,x2,x3,x4), X with C = G4 on a,b,c,d (or its dual on ~a,~b,~c,~d) and X the par over the
// blocks of p of the tensor of the negated inputs. Provable when p belongs to the rules of C.
Sequent g4SequentFromPartition(const Partition& p, bool dualSide);

}  // namespace gs
