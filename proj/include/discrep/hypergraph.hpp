#pragma once

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "discrep/errors.hpp"

namespace discrep {

/// Vertex-level set system. Edges are strictly ascending vertex-id lists;
/// the edge list order is part of the value.
struct Hypergraph {
    int num_vertices = 0;
    std::vector<std::vector<int>> edges;

    void validate() const {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& edge = edges[e];
            for (std::size_t i = 0; i < edge.size(); ++i) {
                if (edge[i] < 0 || edge[i] >= num_vertices)
                    throw invalid_input("edge " + std::to_string(e) + ": vertex id out of range");
                if (i > 0 && edge[i] <= edge[i - 1])
                    throw invalid_input("edge " + std::to_string(e) + ": ids not strictly ascending");
            }
        }
    }

    bool operator==(const Hypergraph&) const = default;
};

enum class Color : unsigned char { red = 0, blue = 1 };

struct Coloring {
    std::vector<Color> colors;
};

/// Partition of the vertices into maximal classes with identical edge
/// membership. Atoms are ordered by the lexicographic order of their
/// edge-membership signature (isolated vertices, signature {}, come first).
struct AtomSystem {
    std::vector<int> atom_sizes;
    std::vector<std::vector<int>> edge_atoms;   // per edge, ascending atom indices
    int num_edges = 0;
    std::vector<std::vector<int>> atom_vertices; // ascending vertex ids per atom
};

inline AtomSystem atomize(const Hypergraph& h) {
    std::vector<std::vector<int>> signature(h.num_vertices);
    for (std::size_t e = 0; e < h.edges.size(); ++e)
        for (int v : h.edges[e])
            signature[v].push_back(static_cast<int>(e));

    std::map<std::vector<int>, std::vector<int>> groups;
    for (int v = 0; v < h.num_vertices; ++v)
        groups[signature[v]].push_back(v);

    AtomSystem a;
    a.num_edges = static_cast<int>(h.edges.size());
    a.edge_atoms.resize(h.edges.size());
    int idx = 0;
    for (auto& [sig, verts] : groups) {
        a.atom_sizes.push_back(static_cast<int>(verts.size()));
        a.atom_vertices.push_back(verts);
        for (int e : sig)
            a.edge_atoms[e].push_back(idx);
        ++idx;
    }
    return a;
}

inline int edge_imbalance(const Hypergraph& h, const Coloring& c, int edge_index) {
    if (edge_index < 0 || edge_index >= static_cast<int>(h.edges.size()))
        throw index_out_of_range("edge index " + std::to_string(edge_index) + " out of range");
    if (static_cast<int>(c.colors.size()) != h.num_vertices)
        throw invalid_input("coloring length does not match vertex count");
    int diff = 0;
    for (int v : h.edges[edge_index])
        diff += (c.colors[v] == Color::red) ? 1 : -1;
    return std::abs(diff);
}

inline int discrepancy_of_coloring(const Hypergraph& h, const Coloring& c) {
    int d = 0;
    for (int e = 0; e < static_cast<int>(h.edges.size()); ++e)
        d = std::max(d, edge_imbalance(h, c, e));
    return d;
}

inline void write_hypergraph(std::ostream& os, const Hypergraph& h) {
    os << "HG " << h.num_vertices << ' ' << h.edges.size() << '\n';
    for (const auto& edge : h.edges) {
        for (std::size_t i = 0; i < edge.size(); ++i)
            os << (i ? " " : "") << edge[i];
        os << '\n';
    }
}

inline std::string write_hypergraph(const Hypergraph& h) {
    std::ostringstream os;
    write_hypergraph(os, h);
    return os.str();
}

inline Hypergraph read_hypergraph(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw parse_error(1, "missing header");
    std::istringstream hs(line);
    std::string tag;
    long nv = -1, ne = -1;
    if (!(hs >> tag >> nv >> ne) || tag != "HG" || nv < 0 || ne < 0)
        throw parse_error(1, "expected header \"HG <num_vertices> <num_edges>\"");
    std::string trailing;
    if (hs >> trailing) throw parse_error(1, "trailing tokens after header");

    Hypergraph h;
    h.num_vertices = static_cast<int>(nv);
    for (long e = 0; e < ne; ++e) {
        long lineno = e + 2;
        if (!std::getline(is, line)) throw parse_error(lineno, "missing edge line");
        std::istringstream es(line);
        std::vector<int> edge;
        long v;
        while (es >> v) {
            if (v < 0 || v >= nv) throw parse_error(lineno, "vertex id out of range");
            if (!edge.empty() && v <= edge.back())
                throw parse_error(lineno, "vertex ids not strictly ascending");
            edge.push_back(static_cast<int>(v));
        }
        if (!es.eof()) throw parse_error(lineno, "non-integer token in edge");
        h.edges.push_back(std::move(edge));
    }
    return h;
}

inline Hypergraph read_hypergraph(const std::string& text) {
    std::istringstream is(text);
    return read_hypergraph(is);
}

} // namespace discrep
