#include "gs/formula.hpp"
#include "gs/modular.hpp"

#include <cctype>

namespace gs {

struct Formula::Node {
    Kind kind;
    Atom atom;
    Formula left, right;
};

Formula::Formula() : node_(nullptr) {}

Formula Formula::atom(Atom a) { return Formula(std::make_shared<const Node>(Node{Kind::Atom, a, {}, {}})); }
Formula Formula::par(Formula l, Formula r) {
    return Formula(std::make_shared<const Node>(Node{Kind::Par, Atom(), std::move(l), std::move(r)}));
}
Formula Formula::tensor(Formula l, Formula r) {
    return Formula(std::make_shared<const Node>(Node{Kind::Tensor, Atom(), std::move(l), std::move(r)}));
}

Formula::Kind Formula::kind() const { return node_ ? node_->kind : Kind::Unit; }

Atom Formula::atom() const {
    if (kind() != Kind::Atom) throw std::logic_error("Formula::atom on a non-atom");
    return node_->atom;
}

const Formula& Formula::left() const {
    if (kind() != Kind::Par && kind() != Kind::Tensor) throw std::logic_error("Formula::left on a leaf");
    return node_->left;
}

const Formula& Formula::right() const {
    if (kind() != Kind::Par && kind() != Kind::Tensor) throw std::logic_error("Formula::right on a leaf");
    return node_->right;
}

Formula Formula::negated() const {
    switch (kind()) {
        case Kind::Unit: return *this;
        case Kind::Atom: return atom(node_->atom.negated());
        case Kind::Par: return tensor(left().negated(), right().negated());
        case Kind::Tensor: return par(left().negated(), right().negated());
    }
    return *this;
}

bool Formula::unitFree() const {
    switch (kind()) {
        case Kind::Unit: return false;
        case Kind::Atom: return true;
        default: return left().unitFree() && right().unitFree();
    }
}

std::size_t Formula::literalCount() const {
    switch (kind()) {
        case Kind::Unit: return 0;
        case Kind::Atom: return 1;
        default: return left().literalCount() + right().literalCount();
    }
}

bool operator==(const Formula& x, const Formula& y) {
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
        case Formula::Kind::Unit: return true;
        case Formula::Kind::Atom: return x.atom() == y.atom();
        default: return x.left() == y.left() && x.right() == y.right();
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Formula parse() {
        Formula f = parsePar();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Formula parsePar() {
        Formula f = parseTensor();
        while (accept('|')) f = Formula::par(f, parseTensor());
        return f;
    }

    Formula parseTensor() {
        Formula f = parseUnary();
        while (accept('*')) f = Formula::tensor(f, parseUnary());
        return f;
    }

    Formula parseUnary() {
        if (accept('~')) return parseUnary().negated();
        if (accept('(')) {
            Formula f = parsePar();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        skip();
        if (pos_ < s_.size() && s_[pos_] == '1') {
            ++pos_;
            return Formula::unit();
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
            ++pos_;
        if (start == pos_) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
        try {
            return Formula::atom(Atom(s_.substr(start, pos_ - start)));
        } catch (const std::invalid_argument& e) {
            pos_ = start;
            fail(e.what());
        }
    }
};

Formula fold(const MDTree& t) {
    if (t.isLeaf()) return Formula::atom(t.atom);
    Formula f = fold(t.children[0]);
    for (std::size_t i = 1; i < t.children.size(); ++i)
        f = t.kind == MDTree::Kind::Par ? Formula::par(f, fold(t.children[i])) : Formula::tensor(f, fold(t.children[i]));
    return f;
}

// precedence: 0 top, 1 operand of par, 2 operand of tensor
std::string render(const Formula& f, int ctx, bool unicode) {
    switch (f.kind()) {
        case Formula::Kind::Unit: return unicode ? "∘" : "1";
        case Formula::Kind::Atom: return unicode ? f.atom().pretty() : f.atom().str();
        case Formula::Kind::Par: {
            std::string s = render(f.left(), 1, unicode) + (unicode ? " ⅋ " : "|") + render(f.right(), 1, unicode);
            return ctx == 2 ? "(" + s + ")" : s;
        }
        case Formula::Kind::Tensor:
            return render(f.left(), 2, unicode) + (unicode ? " ⊗ " : "*") + render(f.right(), 2, unicode);
    }
    return {};
}

}  // namespace

Formula parseFormula(std::string_view text) { return Parser(text).parse(); }

Graph toGraph(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Unit: return Graph();
        case Formula::Kind::Atom: return singleton(f.atom());
        case Formula::Kind::Par: return par(toGraph(f.left()), toGraph(f.right()));
        case Formula::Kind::Tensor: return tensor(toGraph(f.left()), toGraph(f.right()));
    }
    return Graph();
}

std::optional<Formula> fromCograph(const Graph& g) {
    if (g.empty()) return Formula::unit();
    MDTree t = decompose(g);
    if (hasPrimeNode(t)) return std::nullopt;
    return fold(t);
}

bool structEquiv(const Formula& f, const Formula& g) { return canonicalForm(toGraph(f)) == canonicalForm(toGraph(g)); }

std::string formatAscii(const Formula& f) { return render(f, 0, false); }
std::string formatUnicode(const Formula& f) { return render(f, 0, true); }

}  // namespace gs
