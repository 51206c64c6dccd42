#include <doctest.h>

#include <random>
#include <sstream>

#include "discrep/builder.hpp"
#include "discrep/solver.hpp"

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

// Re-validates a witness by realizing a concrete coloring and recounting.
void check_witness(const Hypergraph& h, const AtomSystem& a, const DiscrepancyReport& r) {
    REQUIRE(r.witness.has_value());
    REQUIRE(r.min_discrepancy.has_value());
    auto c = realize_coloring(h, a, *r.witness);
    CHECK(discrepancy_of_coloring(h, c) == *r.min_discrepancy);
}

} // namespace

TEST_CASE("brute force tiny cases") {
    auto [h3, c3] = build_single_odd(3);
    CHECK(*brute_force_min_discrepancy(h3).min_discrepancy == 1);

    auto [ht, ct] = build_three(2);
    CHECK(*brute_force_min_discrepancy(ht).min_discrepancy == 2);

    Hypergraph big{25, {}};
    CHECK_THROWS_AS(brute_force_min_discrepancy(big), too_large);
}

TEST_CASE("atom_zero_feasible basics") {
    Hypergraph single{4, {{0, 1, 2, 3}}};
    auto r = atom_zero_feasible(atomize(single));
    CHECK(r.zero_feasible);
    CHECK(r.witness == std::vector<int>{0});

    auto [h12, c12] = build_main(12);
    CHECK_FALSE(atom_zero_feasible(atomize(h12)).zero_feasible);

    auto [h420, c420] = build_main(420);
    CHECK_FALSE(atom_zero_feasible(atomize(h420)).zero_feasible);
}

TEST_CASE("atom_min_discrepancy known values") {
    auto [h6, c6] = build_three(6);
    auto a6 = atomize(h6);
    auto r6 = atom_min_discrepancy(a6);
    CHECK(*r6.min_discrepancy == 2);
    CHECK(*r6.min_discrepancy == *brute_force_min_discrepancy(h6).min_discrepancy);
    check_witness(h6, a6, r6);

    auto [h10, c10] = build_three(10);
    CHECK(*atom_min_discrepancy(atomize(h10)).min_discrepancy == 2);
}

TEST_CASE("atom_min_discrepancy respects the cap") {
    auto [h, cert] = build_main(12);
    auto r = atom_min_discrepancy(atomize(h), 1);
    CHECK_FALSE(r.min_discrepancy.has_value());
    CHECK(r.lower_bound == 2);
}

TEST_CASE("realize_coloring") {
    Hypergraph h{7, {{0, 1, 2, 3}, {4, 5, 6}}};
    auto a = atomize(h);
    REQUIRE(a.atom_sizes.size() == 2);
    // signature order: {e0}-atom before {e1}-atom
    auto c = realize_coloring(h, a, {0, -1});
    int reds = 0;
    for (auto col : c.colors) reds += (col == Color::red);
    CHECK(reds == 2 + 1);
    CHECK(edge_imbalance(h, c, 0) == 0);
    CHECK(edge_imbalance(h, c, 1) == 1);

    CHECK_THROWS_AS(realize_coloring(h, a, {1, 0}), infeasible_vector);  // parity
    CHECK_THROWS_AS(realize_coloring(h, a, {0, -5}), infeasible_vector); // bound
}

TEST_CASE("oracle equivalence on random hypergraphs") {
    std::mt19937 rng(2026);
    for (int trial = 0; trial < 200; ++trial) {
        auto h = random_hypergraph(rng, 16, 8);
        auto a = atomize(h);
        auto brute = brute_force_min_discrepancy(h);
        auto atom = atom_min_discrepancy(a);
        REQUIRE(atom.min_discrepancy.has_value());
        CHECK(*atom.min_discrepancy == *brute.min_discrepancy);
        check_witness(h, a, atom);
        check_witness(h, a, brute);
    }
}

TEST_CASE("builder outputs at brute-force scale agree with the atom solver") {
    for (i64 n : {1, 3, 5, 7, 2, 6, 4}) {
        auto [h, cert] = build_auto(n);
        if (h.num_vertices > 24) continue;
        auto brute = brute_force_min_discrepancy(h);
        auto atom = atom_min_discrepancy(atomize(h));
        CHECK(*brute.min_discrepancy == *atom.min_discrepancy);
        CHECK(*brute.min_discrepancy >= 1);
    }
}

TEST_CASE("parity floor for all-odd edges") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto h = random_hypergraph(rng, 12, 5);
        bool all_odd = !h.edges.empty();
        for (const auto& e : h.edges) all_odd = all_odd && (e.size() % 2 == 1);
        if (!all_odd) continue;
        auto r = atom_min_discrepancy(atomize(h));
        CHECK(*r.min_discrepancy >= 1);
        CHECK(*r.min_discrepancy % 2 == 1);
    }
}

TEST_CASE("node budget is a typed outcome") {
    auto [h, cert] = amplify(8, 2);
    SolverOptions opt;
    opt.node_budget = 10;
    CHECK_THROWS_AS(atom_min_discrepancy(atomize(h), std::nullopt, opt), resource_exhausted);
}

TEST_CASE("parallel search returns identical verdicts and minima") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto h = random_hypergraph(rng, 14, 6);
        auto a = atomize(h);
        auto seq = atom_min_discrepancy(a);
        SolverOptions par;
        par.jobs = 4;
        auto conc = atom_min_discrepancy(a, std::nullopt, par);
        CHECK(*seq.min_discrepancy == *conc.min_discrepancy);
        check_witness(h, a, conc);
    }
}

TEST_CASE("report serialization") {
    auto [h, cert] = build_three(2);
    auto r = brute_force_min_discrepancy(h);
    std::ostringstream os;
    write_report(os, r);
    CHECK(os.str() ==
          "zero_feasible = false\n"
          "min_discrepancy = 2\n"
          "witness = 1,1,1\n"
          "nodes_explored = 8\n"
          "mode = minimize\n");
}
