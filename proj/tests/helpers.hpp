#pragma once

#include "gs/graph.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace th {

// Graph on ids 0..n-1; labels like "a" or "~a".
inline gs::Graph mk(const std::vector<std::string>& labels, const std::vector<std::pair<int, int>>& edges = {}) {
    std::vector<std::pair<gs::VertexId, gs::Atom>> vs;
    for (std::size_t i = 0; i < labels.size(); ++i) vs.emplace_back(static_cast<gs::VertexId>(i), gs::parseAtom(labels[i]));
    std::vector<std::pair<gs::VertexId, gs::VertexId>> es;
    for (auto [v, w] : edges) es.emplace_back(v, w);
    return gs::Graph(vs, es);
}

// labels drawn from a, ~a, b, ~b; each edge with probability 1/2
inline gs::Graph randomGraph(std::mt19937& rng, int n) {
    static const char* names[] = {"a", "~a", "b", "~b"};
    std::vector<std::string> ls;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) ls.push_back(names[rng() % 4]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2) es.emplace_back(i, j);
    return mk(ls, es);
}

// One graph per isomorphism class on n vertices whose labels over a, ~a, b, ~b are balanced
// (as many a as ~a and b as ~b); the other classes are never provable.
inline std::vector<gs::Graph> balancedClasses(int n) {
    std::vector<gs::Graph> out;
    std::set<std::string> seen;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    for (int na = 0; 2 * na <= n; ++na) {
        if (n % 2) break;
        int nb = n / 2 - na;
        std::vector<std::string> ls;
        for (int i = 0; i < na; ++i) ls.push_back("a");
        for (int i = 0; i < na; ++i) ls.push_back("~a");
        for (int i = 0; i < nb; ++i) ls.push_back("b");
        for (int i = 0; i < nb; ++i) ls.push_back("~b");
        for (unsigned long es = 0; es < (1ul << pairs.size()); ++es) {
            std::vector<std::pair<int, int>> chosen;
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if ((es >> e) & 1u) chosen.push_back(pairs[e]);
            gs::Graph g = mk(ls, chosen);
            if (seen.insert(gs::canonicalForm(g)).second) out.push_back(g);
        }
    }
    return out;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline gs::Graph corpus(const std::string& name) {
    return gs::parseGraph(slurp(std::string(GS_SOURCE_DIR) + "/corpus/" + name));
}

}  // namespace th
