#pragma once

#include "gs/graph.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace gs {

// MLL formulas with unit, always in negation normal form.
class Formula {
public:
    enum class Kind { Unit, Atom, Par, Tensor };

    Formula();   // the unit
    static Formula unit() { return Formula(); }
    static Formula atom(Atom a);
    static Formula par(Formula l, Formula r);
    static Formula tensor(Formula l, Formula r);

    Kind kind() const;
    Atom atom() const;                // Atom only
    const Formula& left() const;      // Par/Tensor only
    const Formula& right() const;

    Formula negated() const;          // De Morgan, so the result stays in NNF
    bool unitFree() const;
    std::size_t literalCount() const;

    friend bool operator==(const Formula& x, const Formula& y);   // syntactic

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Grammar: `1` unit, `~` negation, `*` tensor (binds tighter), `|` par, parentheses.
// Errors carry the 1-based column.
Formula parseFormula(std::string_view text);

Graph toGraph(const Formula& f);
// absent when g is not a cograph
std::optional<Formula> fromCograph(const Graph& g);
// graph isomorphism of the images decides structural equivalence
bool structEquiv(const Formula& f, const Formula& g);

std::string formatAscii(const Formula& f);
std::string formatUnicode(const Formula& f);

}  // namespace gs
