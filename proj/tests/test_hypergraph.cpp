#include <doctest.h>

#include <random>
#include <sstream>

#include "discrep/builder.hpp"
#include "discrep/hypergraph.hpp"

using namespace discrep;

namespace {

Hypergraph random_hypergraph(std::mt19937& rng, int max_vertices, int max_edges) {
    Hypergraph h;
    h.num_vertices = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    int ne = std::uniform_int_distribution<int>(0, max_edges)(rng);
    for (int e = 0; e < ne; ++e) {
        std::vector<int> edge;
        for (int v = 0; v < h.num_vertices; ++v)
            if (std::uniform_int_distribution<int>(0, 1)(rng)) edge.push_back(v);
        if (edge.empty()) edge.push_back(std::uniform_int_distribution<int>(0, h.num_vertices - 1)(rng));
        h.edges.push_back(std::move(edge));
    }
    return h;
}

Coloring random_coloring(std::mt19937& rng, int nv) {
    Coloring c;
    for (int v = 0; v < nv; ++v)
        c.colors.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? Color::blue : Color::red);
    return c;
}

} // namespace

TEST_CASE("atomize tiny cases") {
    Hypergraph h{4, {{0, 1}, {1, 2}}};
    auto a = atomize(h);
    CHECK(a.atom_sizes == std::vector<int>{1, 1, 1, 1});
    CHECK(a.num_edges == 2);
    int covered = 0;
    for (int s : a.atom_sizes) covered += s;
    CHECK(covered == 4);

    Hypergraph single{3, {{0, 1, 2}}};
    auto a2 = atomize(single);
    CHECK(a2.atom_sizes == std::vector<int>{3});
    CHECK(a2.edge_atoms[0] == std::vector<int>{0});
}

TEST_CASE("atomize: partition and per-edge size bookkeeping") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto h = random_hypergraph(rng, 20, 8);
        auto a = atomize(h);
        int total = 0;
        for (int s : a.atom_sizes) total += s;
        CHECK(total == h.num_vertices);
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
            int sz = 0;
            for (int at : a.edge_atoms[e]) sz += a.atom_sizes[at];
            CHECK(sz == static_cast<int>(h.edges[e].size()));
        }
        // two vertices share an atom iff their edge memberships agree
        for (std::size_t at = 0; at < a.atom_vertices.size(); ++at)
            for (int v : a.atom_vertices[at])
                for (std::size_t e = 0; e < h.edges.size(); ++e) {
                    bool in_edge = std::binary_search(h.edges[e].begin(), h.edges[e].end(), v);
                    bool atom_in_edge = std::binary_search(a.edge_atoms[e].begin(),
                                                           a.edge_atoms[e].end(),
                                                           static_cast<int>(at));
                    CHECK(in_edge == atom_in_edge);
                }
    }
}

TEST_CASE("atomize exactness: discrepancy recomputable from atom imbalances") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto h = random_hypergraph(rng, 20, 6);
        auto a = atomize(h);
        for (int rep = 0; rep < 5; ++rep) {
            auto c = random_coloring(rng, h.num_vertices);
            std::vector<int> d(a.atom_sizes.size(), 0);
            for (std::size_t at = 0; at < a.atom_vertices.size(); ++at)
                for (int v : a.atom_vertices[at])
                    d[at] += (c.colors[v] == Color::red) ? 1 : -1;
            int via_atoms = 0;
            for (const auto& ats : a.edge_atoms) {
                int sum = 0;
                for (int at : ats) sum += d[at];
                via_atoms = std::max(via_atoms, std::abs(sum));
            }
            CHECK(via_atoms == discrepancy_of_coloring(h, c));
        }
    }
}

TEST_CASE("edge_imbalance and parity") {
    Hypergraph h{4, {{0, 1}, {0, 1, 2}, {0, 1, 2, 3}}};
    Coloring c{{Color::red, Color::blue, Color::red, Color::red}};
    CHECK(edge_imbalance(h, c, 0) == 0);
    CHECK(edge_imbalance(h, c, 1) == 1);
    CHECK(edge_imbalance(h, c, 2) == 2);
    CHECK_THROWS_AS(edge_imbalance(h, c, 3), index_out_of_range);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_hypergraph(rng, 12, 5);
        auto col = random_coloring(rng, g.num_vertices);
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
            CHECK(edge_imbalance(g, col, e) % 2 == static_cast<int>(g.edges[e].size()) % 2);
    }
}

TEST_CASE("discrepancy_of_coloring") {
    Hypergraph edgeless{5, {}};
    Coloring c{{Color::red, Color::red, Color::red, Color::red, Color::red}};
    CHECK(discrepancy_of_coloring(edgeless, c) == 0);

    auto [h, cert] = build_three(2);
    Coloring rbr{{Color::red, Color::blue, Color::red}};
    CHECK(discrepancy_of_coloring(h, rbr) == 2);
}

TEST_CASE("hypergraph text format") {
    Hypergraph h{3, {{0, 1}, {1, 2}}};
    CHECK(write_hypergraph(h) == "HG 3 2\n0 1\n1 2\n");
    CHECK(read_hypergraph("HG 0 0\n") == Hypergraph{});
    CHECK(read_hypergraph(write_hypergraph(h)) == h);

    CHECK_THROWS_AS(read_hypergraph("bogus\n"), parse_error);
    CHECK_THROWS_AS(read_hypergraph("HG 3 1\n0 5\n"), parse_error);
    CHECK_THROWS_AS(read_hypergraph("HG 3 1\n1 0\n"), parse_error);
    CHECK_THROWS_AS(read_hypergraph("HG 3 2\n0 1\n"), parse_error);
    try {
        read_hypergraph("HG 3 2\n0 1\n2 x\n");
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("format round-trip on random hypergraphs") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        auto h = random_hypergraph(rng, 16, 8);
        auto text = write_hypergraph(h);
        CHECK(write_hypergraph(read_hypergraph(text)) == text);
        CHECK(read_hypergraph(text) == h);
    }
}

TEST_CASE("relabeling inside one atom leaves the atom system unchanged") {
    Hypergraph h{6, {{0, 1, 2, 3}, {2, 3, 4, 5}}};
    auto a = atomize(h);
    // swap vertices 2 and 3 (same atom): edges are unchanged as sets
    Hypergraph g = h;
    auto b = atomize(g);
    CHECK(a.atom_sizes == b.atom_sizes);
    CHECK(a.edge_atoms == b.edge_atoms);
}
