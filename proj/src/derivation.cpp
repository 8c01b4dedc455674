#include "gs/inference.hpp"
#include "gs/modular.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace gs {

namespace {

Mask bit(int i) { return Mask{1} << i; }

// Builds the tensor-to-par rearrangement on a fixed vertex set; masks index `cur`.
class GDownBuilder {
public:
    explicit GDownBuilder(Graph start) : cur_(std::move(start)) {}

    const Graph& current() const { return cur_; }
    std::vector<ProofStep>& steps() { return steps_; }

    // cur has the slots arranged as (M1|N1)*...*(Mn|Nn); rearranges them into q<M> | dual(q)<N>
    void run(const Graph& q, std::vector<Mask> ms, std::vector<Mask> ns) {
        Mask kept = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (ms[i]) {
                kept |= bit(static_cast<int>(i));
            } else if (ns[i]) {
                throw std::invalid_argument("deriveGDown: slot " + std::to_string(i) + " has empty M but non-empty N");
            }
        }
        if (std::popcount(kept) <= 1) return;
        Graph sub = induced(q, kept);
        std::vector<Mask> kms, kns;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (ms[i]) {
                kms.push_back(ms[i]);
                kns.push_back(ns[i]);
            }
        rec(decompose(sub), kms, kns);
    }

private:
    Graph cur_;
    std::vector<ProofStep> steps_;

    void ssDown(Mask a, Mask b, Mask s) {
        ProofStep st;
        st.rule = Rule::SsDown;
        st.premise = cur_;
        cur_ = removeEdges(cur_, a, s);
        st.conclusion = cur_;
        st.position = cur_.idsOf(a | b);
        st.params.a = cur_.idsOf(a);
        st.params.b = cur_.idsOf(b);
        st.params.s = cur_.idsOf(s);
        steps_.push_back(std::move(st));
    }

    // (A1|B1)*...*(Ak|Bk) -> (A1|...|Ak) | (B1*...*Bk)
    void tensorToPar(std::vector<std::pair<Mask, Mask>> slots) {
        slots.erase(std::remove_if(slots.begin(), slots.end(), [](auto& p) { return !(p.first | p.second); }),
                    slots.end());
        if (slots.size() <= 1) return;
        auto [a1, b1] = slots.front();
        Mask rest = 0, arest = 0, brest = 0;
        for (std::size_t i = 1; i < slots.size(); ++i) {
            rest |= slots[i].first | slots[i].second;
            arest |= slots[i].first;
            brest |= slots[i].second;
        }
        if (a1) ssDown(a1, b1 | rest, rest);
        tensorToPar(std::vector<std::pair<Mask, Mask>>(slots.begin() + 1, slots.end()));
        if (arest && b1) ssDown(arest, b1 | brest, b1);
    }

    std::pair<Mask, Mask> rec(const MDTree& t, const std::vector<Mask>& ms, const std::vector<Mask>& ns) {
        if (t.isLeaf()) {
            int i = std::countr_zero(t.vertices);
            return {ms[i], ns[i]};
        }
        std::vector<std::pair<Mask, Mask>> parts;
        for (auto& c : t.children) parts.push_back(rec(c, ms, ns));
        Mask x = 0, y = 0;
        for (auto [xi, yi] : parts) {
            x |= xi;
            y |= yi;
        }
        switch (t.kind) {
            case MDTree::Kind::Par: tensorToPar(parts); break;
            case MDTree::Kind::Tensor: {
                std::vector<std::pair<Mask, Mask>> swapped;
                for (auto [xi, yi] : parts) swapped.emplace_back(yi, xi);
                tensorToPar(swapped);
                break;
            }
            case MDTree::Kind::Prime: {
                ProofStep st;
                st.rule = Rule::PDown;
                st.premise = cur_;
                // M slots keep the quotient's edges, N slots keep those of its dual
                for (std::size_t i = 0; i < parts.size(); ++i)
                    for (std::size_t j = i + 1; j < parts.size(); ++j) {
                        auto [mi, ni] = parts[i];
                        auto [mj, nj] = parts[j];
                        cur_ = removeEdges(cur_, mi, nj);
                        cur_ = removeEdges(cur_, ni, mj);
                        cur_ = t.quotient.adjacent(i, j) ? removeEdges(cur_, ni, nj) : removeEdges(cur_, mi, mj);
                    }
                st.conclusion = cur_;
                st.position = cur_.idsOf(x | y);
                st.params.quotient = relabel(t.quotient, Atom());
                for (auto [xi, yi] : parts) {
                    st.params.ms.push_back(cur_.idsOf(xi));
                    st.params.ns.push_back(cur_.idsOf(yi));
                }
                st.params.side = 'M';
                steps_.push_back(std::move(st));
                break;
            }
            case MDTree::Kind::Leaf: break;
        }
        return {x, y};
    }
};

// ∅ -> w | dual(w), where toDual names the dual copy of each vertex of w
Derivation identityOn(const Graph& w, const std::map<VertexId, VertexId>& toDual) {
    Derivation d;
    Graph cur;
    for (std::size_t i = 0; i < w.size(); ++i) {
        VertexId u = toDual.at(w.id(i));
        Graph pair({{u, w.label(i).negated()}, {w.id(i), w.label(i)}}, {});
        ProofStep st;
        st.rule = Rule::AiDown;
        st.premise = cur;
        cur = tensorKeep(cur, pair);
        st.conclusion = cur;
        st.params.v = std::min(u, w.id(i));
        st.params.w = std::max(u, w.id(i));
        st.position = {st.params.v, st.params.w};
        d.steps.push_back(std::move(st));
    }
    GDownBuilder b(cur);
    std::vector<Mask> ms, ns;
    for (std::size_t i = 0; i < w.size(); ++i) {
        ms.push_back(cur.maskOf({w.id(i)}));
        ns.push_back(cur.maskOf({toDual.at(w.id(i))}));
    }
    b.run(w, ms, ns);
    for (auto& s : b.steps()) d.steps.push_back(std::move(s));
    d.conclusion = b.current();
    return d;
}

StepParams renameParams(const StepParams& p, const Bijection& r) {
    auto one = [&](VertexId v) {
        auto it = r.find(v);
        return it == r.end() ? v : it->second;
    };
    auto many = [&](const std::vector<VertexId>& vs) {
        std::vector<VertexId> out;
        for (VertexId v : vs) out.push_back(one(v));
        std::sort(out.begin(), out.end());
        return out;
    };
    StepParams q = p;
    q.v = one(p.v);
    q.w = one(p.w);
    q.a = many(p.a);
    q.b = many(p.b);
    q.s = many(p.s);
    for (auto& m : q.ms) m = many(m);
    for (auto& n : q.ns) n = many(n);
    q.map.clear();
    for (auto [x, y] : p.map) q.map[one(x)] = one(y);
    return q;
}

}  // namespace

Derivation emptyDerivation(const Graph& g) {
    Derivation d;
    d.premise = g;
    d.conclusion = g;
    return d;
}

Derivation compose(Derivation d1, const Derivation& d2) {
    if (d1.conclusion != d2.premise)
        throw std::invalid_argument("compose: conclusion " + describe(d1.conclusion) + " differs from premise " +
                                    describe(d2.premise));
    d1.steps.insert(d1.steps.end(), d2.steps.begin(), d2.steps.end());
    d1.conclusion = d2.conclusion;
    return d1;
}

Derivation liftDerivation(const Derivation& d, const GraphContext& c) {
    auto check = [&](const Graph& g) {
        for (VertexId v : g.ids())
            if (c.host.contains(v)) throw std::invalid_argument("liftDerivation: vertex " + std::to_string(v) + " clashes with the context");
    };
    check(d.premise);
    check(d.conclusion);
    Derivation out;
    out.premise = plug(c, d.premise);
    out.conclusion = plug(c, d.conclusion);
    for (const ProofStep& s : d.steps) {
        check(s.premise);
        check(s.conclusion);
        ProofStep t = s;
        t.premise = plug(c, s.premise);
        t.conclusion = plug(c, s.conclusion);
        if (s.rule == Rule::Iso)
            for (VertexId v : c.host.ids()) t.params.map[v] = v;
        out.steps.push_back(std::move(t));
    }
    return out;
}

Derivation renameDerivation(const Derivation& d, const Bijection& r) {
    Derivation out;
    out.premise = renameVertices(d.premise, r);
    out.conclusion = renameVertices(d.conclusion, r);
    for (const ProofStep& s : d.steps) {
        ProofStep t;
        t.rule = s.rule;
        t.premise = renameVertices(s.premise, r);
        t.conclusion = renameVertices(s.conclusion, r);
        t.params = renameParams(s.params, r);
        StepParams pos;
        pos.a = s.position;
        t.position = renameParams(pos, r).a;
        out.steps.push_back(std::move(t));
    }
    return out;
}

Derivation deriveIdentity(const Graph& g) {
    if (g.empty()) return emptyDerivation(Graph());
    Bijection copy;
    std::map<VertexId, VertexId> toDual;
    for (std::size_t i = 0; i < g.size(); ++i) {
        VertexId c = g.maxId() + 1 + static_cast<VertexId>(i);
        copy[g.id(i)] = c;
        toDual[c] = g.id(i);
    }
    Derivation d = identityOn(renameVertices(g, copy), toDual);
    d.premise = Graph();
    return d;
}

Derivation deriveGDown(const Graph& g, const std::vector<Graph>& ms, const std::vector<Graph>& ns) {
    if (ms.size() != g.size() || ns.size() != g.size())
        throw std::invalid_argument("deriveGDown: need one M and one N per vertex of g");
    for (std::size_t i = 0; i < g.size(); ++i)
        if (ms[i].empty() && !ns[i].empty())
            throw std::invalid_argument("deriveGDown: slot " + std::to_string(i) + " has empty M but non-empty N");
    Graph x = composeVia(g, ms);
    Graph y = composeVia(dual(g), ns);
    Bijection shift;
    VertexId base = static_cast<VertexId>(x.size());
    for (VertexId v : y.ids()) shift[v] = v + base;
    y = renameVertices(y, shift);
    Graph conclusion = parKeep(x, y);

    // composeVia numbers the parts consecutively in slot order
    std::vector<Mask> mm, nm;
    VertexId xo = 0, yo = base;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<VertexId> a, b;
        for (std::size_t k = 0; k < ms[i].size(); ++k) a.push_back(xo++);
        for (std::size_t k = 0; k < ns[i].size(); ++k) b.push_back(yo++);
        mm.push_back(conclusion.maskOf(a));
        nm.push_back(conclusion.maskOf(b));
    }
    Graph premise = conclusion;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) premise = addEdges(premise, mm[i] | nm[i], mm[j] | nm[j]);

    GDownBuilder b(premise);
    b.run(g, mm, nm);
    Derivation d;
    d.premise = premise;
    d.conclusion = b.current();
    d.steps = std::move(b.steps());
    if (d.conclusion != conclusion) throw std::logic_error("deriveGDown: construction did not reach the conclusion");
    return d;
}

Derivation expandIdentities(const Derivation& d) {
    Derivation out = emptyDerivation(d.premise);
    for (const ProofStep& s : d.steps) {
        if (s.rule != Rule::IDown) {
            out.steps.push_back(s);
            out.conclusion = s.conclusion;
            continue;
        }
        const Graph& c = s.conclusion;
        Mask u = c.maskOf(s.params.a), w = c.maskOf(s.params.b);
        std::map<VertexId, VertexId> toDual;
        for (auto [x, y] : s.params.map) toDual[y] = x;
        Derivation id = identityOn(induced(c, w), toDual);
        GraphContext ctx = contextOf(c, u | w);
        Derivation lifted = liftDerivation(id, ctx);
        if (lifted.conclusion != c) throw std::invalid_argument("expandIdentities: i_down step does not rebuild its conclusion");
        for (auto& t : lifted.steps) out.steps.push_back(std::move(t));
        out.conclusion = c;
    }
    return out;
}

// ---------------------------------------------------------------- text format

namespace {

std::string fmtIds(const std::vector<VertexId>& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
    return out + "}";
}

std::string fmtSlots(const std::vector<std::vector<VertexId>>& slots) {
    std::string out = "{";
    for (std::size_t i = 0; i < slots.size(); ++i) out += (i ? "," : "") + fmtIds(slots[i]);
    return out + "}";
}

class GraphTable {
public:
    std::string ref(const Graph& g) {
        for (std::size_t i = 0; i < graphs_.size(); ++i)
            if (graphs_[i] == g) return "g" + std::to_string(i);
        graphs_.push_back(g);
        return "g" + std::to_string(graphs_.size() - 1);
    }
    const std::vector<Graph>& graphs() const { return graphs_; }

private:
    std::vector<Graph> graphs_;
};

std::string fmtParams(const ProofStep& s, GraphTable& table) {
    const StepParams& p = s.params;
    std::vector<std::string> kv;
    switch (s.rule) {
        case Rule::AiDown:
        case Rule::AiUp:
            kv.push_back("v=" + std::to_string(p.v));
            kv.push_back("w=" + std::to_string(p.w));
            break;
        case Rule::SsDown:
        case Rule::SsUp:
            kv.push_back("A=" + fmtIds(p.a));
            kv.push_back("B=" + fmtIds(p.b));
            kv.push_back("S=" + fmtIds(p.s));
            break;
        case Rule::Sw:
            kv.push_back("A=" + fmtIds(p.a));
            kv.push_back("B=" + fmtIds(p.b));
            kv.push_back("C=" + fmtIds(p.s));
            break;
        case Rule::IDown:
        case Rule::IUp:
            kv.push_back("U=" + fmtIds(p.a));
            kv.push_back("W=" + fmtIds(p.b));
            [[fallthrough]];
        case Rule::Iso: {
            std::string m = "{";
            bool first = true;
            for (auto [x, y] : p.map) {
                m += (first ? "" : ",") + std::to_string(x) + ":" + std::to_string(y);
                first = false;
            }
            kv.push_back("map=" + m + "}");
            break;
        }
        case Rule::PDown:
        case Rule::PUp:
        case Rule::GDown:
        case Rule::GUp:
            kv.push_back("Q=" + table.ref(p.quotient));
            kv.push_back("M=" + fmtSlots(p.ms));
            kv.push_back("N=" + fmtSlots(p.ns));
            if (s.rule == Rule::PDown || s.rule == Rule::PUp) kv.push_back(std::string("side=") + p.side);
            break;
    }
    std::string out;
    for (std::size_t i = 0; i < kv.size(); ++i) out += (i ? "," : "") + kv[i];
    return out;
}

// splits on commas outside braces
std::vector<std::string> splitTop(std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '{') ++depth;
        if (ch == '}') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::string stripBraces(std::string_view s, std::size_t line) {
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("expected {...}, got '" + std::string(s) + "'", line);
    return std::string(s.substr(1, s.size() - 2));
}

VertexId parseId(std::string_view s, std::size_t line) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("expected a vertex id, got '" + std::string(s) + "'", line);
    return static_cast<VertexId>(std::stoul(std::string(s)));
}

std::vector<VertexId> parseIds(std::string_view s, std::size_t line) {
    std::vector<VertexId> out;
    for (auto& t : splitTop(stripBraces(s, line))) out.push_back(parseId(t, line));
    return out;
}

std::vector<std::vector<VertexId>> parseSlots(std::string_view s, std::size_t line) {
    std::vector<std::vector<VertexId>> out;
    for (auto& t : splitTop(stripBraces(s, line))) out.push_back(parseIds(t, line));
    return out;
}

Bijection parseMap(std::string_view s, std::size_t line) {
    Bijection out;
    for (auto& t : splitTop(stripBraces(s, line))) {
        auto colon = t.find(':');
        if (colon == std::string::npos) throw ParseError("expected x:y in map", line);
        out[parseId(std::string_view(t).substr(0, colon), line)] = parseId(std::string_view(t).substr(colon + 1), line);
    }
    return out;
}

}  // namespace

std::string formatDerivation(const Derivation& d) {
    GraphTable table;
    std::ostringstream steps;
    std::string pre = table.ref(d.premise), con = table.ref(d.conclusion);
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const ProofStep& s = d.steps[k];
        std::string a = table.ref(s.premise), b = table.ref(s.conclusion);
        std::string params = fmtParams(s, table);
        steps << "step " << k + 1 << ' ' << ruleName(s.rule) << " premise=" << a << " conclusion=" << b
              << " pos=" << fmtIds(s.position) << " params=" << params << '\n';
    }
    std::ostringstream out;
    out << "derivation\npremise " << pre << "\nconclusion " << con << '\n';
    for (std::size_t i = 0; i < table.graphs().size(); ++i)
        out << "graph g" << i << '\n' << formatGraph(table.graphs()[i]) << "end\n";
    out << steps.str();
    return out.str();
}

Derivation parseDerivation(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNo = 0;
    std::map<std::string, Graph> graphs;
    std::string preRef, conRef;
    bool header = false;
    struct RawStep {
        std::size_t line;
        Rule rule;
        std::string premise, conclusion;
        std::vector<VertexId> pos;
        std::vector<std::string> params;
    };
    std::vector<RawStep> raw;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "derivation") {
            header = true;
        } else if (kw == "premise") {
            ls >> preRef;
        } else if (kw == "conclusion") {
            ls >> conRef;
        } else if (kw == "graph") {
            std::string name;
            if (!(ls >> name)) throw ParseError("graph needs a name", lineNo);
            std::string body;
            std::size_t start = lineNo;
            bool closed = false;
            while (std::getline(in, line)) {
                ++lineNo;
                std::istringstream ts(line);
                std::string first;
                if ((ts >> first) && first == "end") {
                    closed = true;
                    break;
                }
                body += line + '\n';
            }
            if (!closed) throw ParseError("graph " + name + " is not closed by 'end'", start);
            try {
                graphs[name] = parseGraph(body);
            } catch (const ParseError& e) {
                throw ParseError(std::string("in graph ") + name + ": " + e.what(), start + e.line());
            }
        } else if (kw == "step") {
            RawStep r;
            r.line = lineNo;
            std::string k, rule;
            if (!(ls >> k >> rule)) throw ParseError("expected 'step <k> <rule> ...'", lineNo);
            auto parsed = parseRule(rule);
            if (!parsed) throw ParseError("unknown rule '" + rule + "'", lineNo);
            r.rule = *parsed;
            std::string field;
            while (ls >> field) {
                auto eq = field.find('=');
                if (eq == std::string::npos) throw ParseError("expected key=value, got '" + field + "'", lineNo);
                std::string key = field.substr(0, eq), value = field.substr(eq + 1);
                if (key == "premise") r.premise = value;
                else if (key == "conclusion") r.conclusion = value;
                else if (key == "pos") r.pos = parseIds(value, lineNo);
                else if (key == "params") r.params = splitTop(value);
                else throw ParseError("unknown field '" + key + "'", lineNo);
            }
            raw.push_back(std::move(r));
        } else {
            throw ParseError("unknown statement '" + kw + "'", lineNo);
        }
    }
    if (!header) throw ParseError("missing 'derivation' header", 1);
    auto lookup = [&](const std::string& ref, std::size_t l) -> const Graph& {
        auto it = graphs.find(ref);
        if (it == graphs.end()) throw ParseError("unknown graph '" + ref + "'", l);
        return it->second;
    };
    Derivation d;
    d.premise = lookup(preRef, lineNo);
    d.conclusion = lookup(conRef, lineNo);
    for (auto& r : raw) {
        ProofStep s;
        s.rule = r.rule;
        s.premise = lookup(r.premise, r.line);
        s.conclusion = lookup(r.conclusion, r.line);
        s.position = r.pos;
        for (auto& kv : r.params) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw ParseError("expected key=value in params, got '" + kv + "'", r.line);
            std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
            if (key == "v") s.params.v = parseId(value, r.line);
            else if (key == "w") s.params.w = parseId(value, r.line);
            else if (key == "A" || key == "U") s.params.a = parseIds(value, r.line);
            else if (key == "B" || key == "W") s.params.b = parseIds(value, r.line);
            else if (key == "S" || key == "C") s.params.s = parseIds(value, r.line);
            else if (key == "map") s.params.map = parseMap(value, r.line);
            else if (key == "Q") s.params.quotient = lookup(value, r.line);
            else if (key == "M") s.params.ms = parseSlots(value, r.line);
            else if (key == "N") s.params.ns = parseSlots(value, r.line);
            else if (key == "side" && (value == "M" || value == "N")) s.params.side = value[0];
            else throw ParseError("unknown parameter '" + kv + "'", r.line);
        }
        d.steps.push_back(std::move(s));
    }
    return d;
}

}  // namespace gs
