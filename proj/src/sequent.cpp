#include "gs/sequent.hpp"

#include "gs/prover.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace gs {

GenFormula GenFormula::fromAtom(Atom a) {
    GenFormula f;
    f.atom = a;
    return f;
}

GenFormula GenFormula::make(Kind k, std::vector<GenFormula> children) {
    std::size_t want = (k == Kind::Par || k == Kind::Tensor) ? 2 : 4;
    if (k == Kind::Atom || children.size() != want) throw std::invalid_argument("GenFormula::make: wrong arity");
    GenFormula f;
    f.kind = k;
    f.children = std::move(children);
    return f;
}

GenFormula GenFormula::fromFormula(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Unit: throw std::invalid_argument("sequent formulas are unit-free");
        case Formula::Kind::Atom: return fromAtom(f.atom());
        case Formula::Kind::Par: return make(Kind::Par, {fromFormula(f.left()), fromFormula(f.right())});
        case Formula::Kind::Tensor: return make(Kind::Tensor, {fromFormula(f.left()), fromFormula(f.right())});
    }
    return {};
}

GenFormula GenFormula::negated() const {
    if (kind == Kind::Atom) return fromAtom(atom.negated());
    std::vector<GenFormula> cs;
    for (const auto& c : children) cs.push_back(c.negated());
    Kind k = kind == Kind::Par ? Kind::Tensor : kind == Kind::Tensor ? Kind::Par : kind == Kind::G4 ? Kind::G4Dual : Kind::G4;
    return make(k, std::move(cs));
}

bool GenFormula::hasG4() const {
    if (kind == Kind::G4 || kind == Kind::G4Dual) return true;
    return std::any_of(children.begin(), children.end(), [](const GenFormula& c) { return c.hasG4(); });
}

std::size_t GenFormula::literalCount() const {
    if (kind == Kind::Atom) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.literalCount();
    return n;
}

// ---------------------------------------------------------------- syntax

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Sequent sequent() {
        Sequent out;
        skip();
        if (pos_ == s_.size()) return out;
        out.push_back(par());
        while (accept(',')) out.push_back(par());
        end();
        return out;
    }

    GenFormula formula() {
        GenFormula f = par();
        end();
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
    void end() {
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }

    GenFormula par() {
        GenFormula f = tensor();
        while (accept('|')) f = GenFormula::make(GenFormula::Kind::Par, {f, tensor()});
        return f;
    }
    GenFormula tensor() {
        GenFormula f = unary();
        while (accept('*')) f = GenFormula::make(GenFormula::Kind::Tensor, {f, unary()});
        return f;
    }
    bool connective() {
        skip();
        if (s_.substr(pos_, 2) != "G4") return false;
        std::size_t save = pos_;
        pos_ += 2;
        if (accept('(')) return true;
        pos_ = save;
        return false;
    }

    GenFormula g4Args(GenFormula::Kind k) {
        std::vector<GenFormula> args{par()};
        for (int i = 0; i < 3; ++i) {
            if (!accept(',')) fail("G4 takes four arguments");
            args.push_back(par());
        }
        if (!accept(')')) fail("expected ')' after the fourth argument of G4");
        return GenFormula::make(k, std::move(args));
    }

    GenFormula unary() {
        if (accept('~')) {
            // ~G4(...) names the dual connective, applied to the arguments as written
            if (connective()) return g4Args(GenFormula::Kind::G4Dual);
            return unary().negated();
        }
        if (connective()) return g4Args(GenFormula::Kind::G4);
        if (accept('(')) {
            GenFormula f = par();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        skip();
        if (pos_ < s_.size() && s_[pos_] == '1') fail("the unit is not allowed in sequents");
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
            ++pos_;
        if (start == pos_) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
        std::string_view name = s_.substr(start, pos_ - start);
        try {
            return GenFormula::fromAtom(Atom(name));
        } catch (const std::invalid_argument& e) {
            pos_ = start;
            fail(e.what());
        }
    }
};

// precedence: 0 top, 1 operand of par, 2 operand of tensor; right-nested operators keep their brackets
std::string render(const GenFormula& f, int ctx) {
    using K = GenFormula::Kind;
    switch (f.kind) {
        case K::Atom: return f.atom.str();
        case K::Par: {
            const GenFormula& r = f.children[1];
            std::string rs = render(r, 1);
            if (r.kind == K::Par) rs = "(" + rs + ")";
            std::string s = render(f.children[0], 1) + "|" + rs;
            return ctx == 2 ? "(" + s + ")" : s;
        }
        case K::Tensor: {
            const GenFormula& r = f.children[1];
            std::string rs = render(r, 2);
            if (r.kind == K::Tensor) rs = "(" + rs + ")";
            return render(f.children[0], 2) + "*" + rs;
        }
        case K::G4:
        case K::G4Dual: {
            std::string s = f.kind == K::G4 ? "G4(" : "~G4(";
            for (std::size_t i = 0; i < 4; ++i) s += (i ? "," : "") + render(f.children[i], 0);
            return s + ")";
        }
    }
    return {};
}

}  // namespace

GenFormula parseGenFormula(std::string_view text) { return Parser(text).formula(); }
Sequent parseSequent(std::string_view text) { return Parser(text).sequent(); }
std::string formatGenFormula(const GenFormula& f) { return render(f, 0); }

std::string formatSequent(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + formatGenFormula(s[i]);
    return out;
}

const PartitionSet& g4RuleSet() {
    static const PartitionSet s = g4Partitions();
    return s;
}

const PartitionSet& g4DualRuleSet() {
    static const PartitionSet s = PartitionSet::make(4, orthogonalComplement(g4Partitions()));
    return s;
}

// ---------------------------------------------------------------- proofs

std::size_t SequentProof::size() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p.size();
    return n;
}

namespace {

void renderProof(const SequentProof& p, int depth, std::string& out) {
    out += std::string(static_cast<std::size_t>(2 * depth), ' ') + "|- " + formatSequent(p.conclusion) + "   [" + p.rule + "]\n";
    for (const auto& q : p.premises) renderProof(q, depth + 1, out);
}

std::vector<std::string> keys(const Sequent& s) {
    std::vector<std::string> k;
    for (const auto& f : s) k.push_back(formatGenFormula(f));
    std::sort(k.begin(), k.end());
    return k;
}

// a - b as multisets; absent when b is not contained in a
std::optional<std::vector<std::string>> minus(std::vector<std::string> a, const std::vector<std::string>& b) {
    for (const auto& x : b) {
        auto it = std::find(a.begin(), a.end(), x);
        if (it == a.end()) return std::nullopt;
        a.erase(it);
    }
    return a;
}

const PartitionSet& rulesOf(GenFormula::Kind k) {
    static const PartitionSet tensor = parsePartitionSet("{{{1},{2}}}");
    static const PartitionSet par = parsePartitionSet("{{{1,2}}}");
    switch (k) {
        case GenFormula::Kind::Tensor: return tensor;
        case GenFormula::Kind::Par: return par;
        case GenFormula::Kind::G4: return g4RuleSet();
        case GenFormula::Kind::G4Dual: return g4DualRuleSet();
        default: throw std::logic_error("atoms have no rules");
    }
}

std::string ruleName(GenFormula::Kind k, const Partition& p) {
    switch (k) {
        case GenFormula::Kind::Tensor: return "tensor";
        case GenFormula::Kind::Par: return "par";
        case GenFormula::Kind::G4: return "G4" + formatPartition(p);
        default: return "~G4" + formatPartition(p);
    }
}

// Each atom occurs as often as its dual.
bool balanced(const Sequent& s) {
    std::map<std::uint32_t, int> count;
    std::function<void(const GenFormula&)> walk = [&](const GenFormula& f) {
        if (f.kind == GenFormula::Kind::Atom) {
            count[f.atom.symbol()] += f.atom.negative() ? -1 : 1;
            return;
        }
        for (const auto& c : f.children) walk(c);
    };
    for (const auto& f : s) walk(f);
    return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 0; });
}

class Search {
public:
    Search(const SequentConfig& cfg, bool allowG4) : cfg_(cfg), allowG4_(allowG4) {}

    std::optional<SequentProof> prove(Sequent s) {
        std::size_t lits = 0;
        for (const auto& f : s) {
            if (!allowG4_ && f.hasG4()) throw std::invalid_argument("proveMll: G4 needs proveMllG4");
            lits += f.literalCount();
        }
        if (lits > cfg_.literalLimit)
            throw LimitError("sequent has " + std::to_string(lits) + " literals, limit is " + std::to_string(cfg_.literalLimit));
        return search(std::move(s));
    }

private:
    const SequentConfig& cfg_;
    bool allowG4_;
    std::size_t nodes_ = 0;
    std::map<std::vector<std::string>, std::optional<SequentProof>> memo_;

    static Sequent sorted(Sequent s) {
        std::sort(s.begin(), s.end(),
                  [](const GenFormula& x, const GenFormula& y) { return formatGenFormula(x) < formatGenFormula(y); });
        return s;
    }

    std::optional<SequentProof> search(Sequent s) {
        s = sorted(std::move(s));
        auto key = keys(s);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (++nodes_ > cfg_.nodeLimit) throw LimitError("sequent search exceeds " + std::to_string(cfg_.nodeLimit) + " sequents");
        auto result = searchUncached(s);
        memo_.emplace(std::move(key), result);
        return result;
    }

    std::optional<SequentProof> searchUncached(const Sequent& s) {
        // par is invertible, so it is applied first
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i].kind == GenFormula::Kind::Par) {
                Sequent prem = s;
                prem.erase(prem.begin() + static_cast<long>(i));
                prem.push_back(s[i].children[0]);
                prem.push_back(s[i].children[1]);
                auto sub = search(prem);
                if (!sub) return std::nullopt;
                return SequentProof{"par", s, {std::move(*sub)}};
            }
        if (s.empty() || !balanced(s)) return std::nullopt;
        if (s.size() == 2 && s[0].kind == GenFormula::Kind::Atom && s[1].kind == GenFormula::Kind::Atom &&
            s[0].atom == s[1].atom.negated())
            return SequentProof{"ax", s, {}};

        std::vector<std::string> ks = keys(s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i].kind == GenFormula::Kind::Atom) continue;
            if (i > 0 && formatGenFormula(s[i]) == formatGenFormula(s[i - 1])) continue;   // same principal
            Sequent ctx = s;
            ctx.erase(ctx.begin() + static_cast<long>(i));
            for (const Partition& p : rulesOf(s[i].kind).parts)
                if (auto r = principal(s, s[i], p, ctx)) return r;
        }
        return mix(s);
    }

    // Every distribution of the context over the blocks of p.
    std::optional<SequentProof> principal(const Sequent& s, const GenFormula& f, const Partition& p, const Sequent& ctx) {
        std::size_t k = p.blocks.size(), m = ctx.size();
        std::vector<std::size_t> where(m, 0);
        while (true) {
            std::vector<Sequent> prem(k);
            for (std::size_t b = 0; b < k; ++b)
                for (int x : p.blocks[b]) prem[b].push_back(f.children[static_cast<std::size_t>(x - 1)]);
            for (std::size_t j = 0; j < m; ++j) prem[where[j]].push_back(ctx[j]);
            if (std::all_of(prem.begin(), prem.end(), balanced)) {
                SequentProof out{ruleName(f.kind, p), s, {}};
                bool ok = true;
                for (auto& q : prem) {
                    auto sub = search(std::move(q));
                    if (!sub) {
                        ok = false;
                        break;
                    }
                    out.premises.push_back(std::move(*sub));
                }
                if (ok) return out;
            }
            std::size_t j = 0;
            while (j < m && ++where[j] == k) where[j++] = 0;
            if (j == m) return std::nullopt;
        }
    }

    std::optional<SequentProof> mix(const Sequent& s) {
        std::size_t m = s.size();
        if (m < 2 || m > 20) return std::nullopt;
        // the first formula always goes left
        for (unsigned long bits = 0; bits + 1 < (1ul << (m - 1)); ++bits) {
            Sequent l{s[0]}, r;
            for (std::size_t j = 1; j < m; ++j) ((bits >> (j - 1)) & 1ul ? l : r).push_back(s[j]);
            if (!balanced(l) || !balanced(r)) continue;
            auto pl = search(l);
            if (!pl) continue;
            auto pr = search(r);
            if (!pr) continue;
            return SequentProof{"mix", s, {std::move(*pl), std::move(*pr)}};
        }
        return std::nullopt;
    }
};

bool checkRule(const SequentProof& p) {
    auto concl = keys(p.conclusion);
    if (p.rule == "ax") {
        return p.premises.empty() && p.conclusion.size() == 2 && p.conclusion[0].kind == GenFormula::Kind::Atom &&
               p.conclusion[1].kind == GenFormula::Kind::Atom && p.conclusion[0].atom == p.conclusion[1].atom.negated();
    }
    if (p.rule == "mix") {
        if (p.premises.size() != 2 || p.premises[0].conclusion.empty() || p.premises[1].conclusion.empty()) return false;
        auto all = keys(p.premises[0].conclusion);
        auto more = keys(p.premises[1].conclusion);
        all.insert(all.end(), more.begin(), more.end());
        std::sort(all.begin(), all.end());
        return all == concl;
    }
    GenFormula::Kind kind;
    Partition part;
    if (p.rule == "par") {
        kind = GenFormula::Kind::Par;
        part = rulesOf(kind).parts[0];
    } else if (p.rule == "tensor") {
        kind = GenFormula::Kind::Tensor;
        part = rulesOf(kind).parts[0];
    } else if (p.rule.rfind("~G4", 0) == 0) {
        kind = GenFormula::Kind::G4Dual;
        part = parsePartition(p.rule.substr(3));
    } else if (p.rule.rfind("G4", 0) == 0) {
        kind = GenFormula::Kind::G4;
        part = parsePartition(p.rule.substr(2));
    } else {
        return false;
    }
    if (!rulesOf(kind).contains(part) || p.premises.size() != part.blocks.size()) return false;
    // some principal formula of the right kind whose children sit in the matching premises
    for (const auto& f : p.conclusion) {
        if (f.kind != kind) continue;
        auto rest = minus(concl, {formatGenFormula(f)});
        std::vector<std::string> sides;
        bool ok = true;
        for (std::size_t b = 0; b < part.blocks.size() && ok; ++b) {
            std::vector<std::string> block;
            for (int x : part.blocks[b]) block.push_back(formatGenFormula(f.children[static_cast<std::size_t>(x - 1)]));
            auto side = minus(keys(p.premises[b].conclusion), block);
            if (!side) ok = false;
            else sides.insert(sides.end(), side->begin(), side->end());
        }
        std::sort(sides.begin(), sides.end());
        if (ok && rest && sides == *rest) return true;
    }
    return false;
}

}  // namespace

std::string formatSequentProof(const SequentProof& p) {
    std::string out;
    renderProof(p, 0, out);
    return out;
}

bool checkSequentProof(const SequentProof& p) {
    if (!checkRule(p)) return false;
    return std::all_of(p.premises.begin(), p.premises.end(), checkSequentProof);
}

std::optional<SequentProof> proveMll(const Sequent& s, const SequentConfig& cfg) { return Search(cfg, false).prove(s); }
std::optional<SequentProof> proveMllG4(const Sequent& s, const SequentConfig& cfg) { return Search(cfg, true).prove(s); }

ConservativityResult conservativityCheck(const Formula& f, const SequentConfig& cfg) {
    if (!f.unitFree()) throw std::invalid_argument("conservativityCheck: the formula contains the unit");
    ConservativityResult r;
    r.sequentProof = proveMll({GenFormula::fromFormula(f)}, cfg);
    r.sequentProvable = r.sequentProof.has_value();
    ProverConfig pc;
    pc.shortcuts = false;
    pc.cographOracle = false;
    ProofResult g = Prover(pc).run(toGraph(f));
    if (g.verdict == Verdict::Limit) throw LimitError(g.message);
    r.graphProvable = g.verdict == Verdict::Provable;
    r.graphProof = std::move(g.proof);
    return r;
}

Sequent g4SequentFromPartition(const Partition& p, bool dualSide) {
    if (p.n != 4) throw std::invalid_argument("g4SequentFromPartition: partition of {1,2,3,4} expected");
    std::vector<GenFormula> inputs;
    for (const char* name : {"a", "b", "c", "d"}) {
        GenFormula x = GenFormula::fromAtom(Atom(name));
        inputs.push_back(dualSide ? x.negated() : x);
    }
    GenFormula c = GenFormula::make(dualSide ? GenFormula::Kind::G4Dual : GenFormula::Kind::G4, inputs);
    std::optional<GenFormula> side;
    for (const auto& b : p.blocks) {
        std::optional<GenFormula> t;
        for (int x : b) {
            GenFormula y = inputs[static_cast<std::size_t>(x - 1)].negated();
            t = t ? GenFormula::make(GenFormula::Kind::Tensor, {*t, y}) : y;
        }
        side = side ? GenFormula::make(GenFormula::Kind::Par, {*side, *t}) : *t;
    }
    return {c, *side};
}

}  // namespace gs
