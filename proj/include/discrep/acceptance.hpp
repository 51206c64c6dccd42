#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "discrep/builder.hpp"
#include "discrep/hypergraph.hpp"
#include "discrep/matrixlab.hpp"
#include "discrep/numtheory.hpp"
#include "discrep/solver.hpp"

namespace discrep {

namespace acceptance_detail {

inline Hypergraph random_hypergraph(std::mt19937& rng, int max_vertices, int max_edges) {
    Hypergraph h;
    h.num_vertices = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    int ne = std::uniform_int_distribution<int>(0, max_edges)(rng);
    for (int e = 0; e < ne; ++e) {
        std::vector<int> edge;
        for (int v = 0; v < h.num_vertices; ++v)
            if (std::uniform_int_distribution<int>(0, 1)(rng)) edge.push_back(v);
        if (edge.empty())
            edge.push_back(std::uniform_int_distribution<int>(0, h.num_vertices - 1)(rng));
        h.edges.push_back(std::move(edge));
    }
    return h;
}

inline bool uniform(const Hypergraph& h, i64 n) {
    for (const auto& e : h.edges)
        if (static_cast<i64>(e.size()) != n) return false;
    return true;
}

} // namespace acceptance_detail

/// Runs every acceptance criterion, printing one pass/fail line per criterion.
/// Returns true iff all pass.
inline bool run_acceptance(std::ostream& os) {
    using clock = std::chrono::steady_clock;
    namespace ad = acceptance_detail;
    bool all_ok = true;
    int num = 0;

    auto criterion = [&](const std::string& name, double time_limit_s,
                         const std::function<bool()>& body) {
        ++num;
        auto t0 = clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = body();
        } catch (const std::exception& e) {
            note = std::string(" [exception: ") + e.what() + "]";
        }
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (ok && secs >= time_limit_s) {
            ok = false;
            note = " [over time limit]";
        }
        all_ok = all_ok && ok;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2fs", secs);
        os << "criterion " << num << " [" << name << "]: " << (ok ? "PASS" : "FAIL") << " ("
           << buf << ")" << note << '\n';
    };

    criterion("example19 sweep: 11 edges, uniform, zero-infeasible", 1.0, [] {
        int built = 0;
        for (i64 n = 20; n <= 200; n += 2) {
            if (n % 19 == 0) continue;
            Build b;
            try {
                b = build_example19(n);
            } catch (const non_positive_block&) {
                continue;  // b - t < 0: outside the construction's range
            }
            ++built;
            if (b.first.edges.size() != 11) return false;
            if (!ad::uniform(b.first, n)) return false;
            if (atom_zero_feasible(atomize(b.first)).zero_feasible) return false;
        }
        return built > 50;
    });

    criterion("example19(110) has minimum discrepancy exactly 6", 30.0, [] {
        auto [h, cert] = build_example19(110);
        if (cert.shift != 9 || cert.x != std::vector<i64>{15, 13}) return false;
        auto r = atom_min_discrepancy(atomize(h));
        return r.min_discrepancy && *r.min_discrepancy == 6;
    });

    criterion("main construction: uniform, <= 7m edges, <= 2 corrections, zero-infeasible",
              60.0, [] {
        for (i64 n : {4, 12, 16, 48, 60, 420, 2520}) {
            auto [h, cert] = build_main(n);
            if (!ad::uniform(h, n)) return false;
            if (cert.edge_count > 7 * i64{cert.m} || !cert.bound_7m_ok) return false;
            if (cert.corrections.size() > 2) return false;
            if (atom_zero_feasible(atomize(h)).zero_feasible) return false;
        }
        return true;
    });

    criterion("build_main(4): brute force over 2^17 colorings agrees", 5.0, [] {
        auto [h, cert] = build_main(4);
        if (h.num_vertices != 17) return false;
        auto brute = brute_force_min_discrepancy(h);
        if (brute.zero_feasible || *brute.min_discrepancy < 1) return false;
        return atom_zero_feasible(atomize(h)).zero_feasible == brute.zero_feasible;
    });

    criterion("trivial cases: f(odd) = 1 witness, f(2 mod 4) = 3 witness", 5.0, [] {
        for (i64 n : {1, 3, 5, 7}) {
            auto [h, cert] = build_single_odd(n);
            if (*brute_force_min_discrepancy(h).min_discrepancy != 1) return false;
        }
        for (i64 n : {2, 6}) {
            auto [h, cert] = build_three(n);
            if (*brute_force_min_discrepancy(h).min_discrepancy != 2) return false;
        }
        auto [h10, c10] = build_three(10);
        return *atom_min_discrepancy(atomize(h10)).min_discrepancy == 2;
    });

    criterion("oracle equivalence on 200 random hypergraphs", 60.0, [] {
        std::mt19937 rng(2026);
        for (int trial = 0; trial < 200; ++trial) {
            auto h = ad::random_hypergraph(rng, 16, 8);
            auto a = atomize(h);
            auto brute = brute_force_min_discrepancy(h);
            auto atom = atom_min_discrepancy(a);
            if (!atom.min_discrepancy || *atom.min_discrepancy != *brute.min_discrepancy)
                return false;
            // re-validate both witnesses by direct recount
            for (const auto& rep : {brute, atom}) {
                auto c = realize_coloring(h, a, *rep.witness);
                if (discrepancy_of_coloring(h, c) != *rep.min_discrepancy) return false;
            }
        }
        return true;
    });

    criterion("v-matrix: |det| = q for q in [3, 64], det = -19 at q = 19", 1.0, [] {
        for (i64 q = 3; q <= 64; ++q)
            if (!verify_v_matrix(q)) return false;
        auto d = eta_decompose(19);
        auto f = build_vectors(d);
        IntMatrix m(d.m, d.m);
        for (int r = 0; r < d.m; ++r)
            for (int c = 0; c < d.m; ++c) m.at(r, c) = f.v[r][c];
        return exact_det(m) == -19;
    });

    criterion("z(J-I) = n for n in [1,6]; I in M with z = 1; [[1,1]] rejected", 5.0, [] {
        for (int n = 1; n <= 6; ++n) {
            auto r = is_in_M(IntMatrix::ones_minus_identity(n + 1));
            if (!r.in_M || r.z != n) return false;
        }
        for (int k = 1; k <= 4; ++k) {
            auto r = is_in_M(IntMatrix::identity(k));
            if (!r.in_M || r.z != 1) return false;
        }
        return !is_in_M(IntMatrix(1, 2, {1, 1})).in_M;
    });

    criterion("amplify(8,2): 300 edges of size 8, minimum discrepancy >= 4", 120.0, [] {
        auto [h, cert] = amplify(8, 2);
        if (h.edges.size() != 300 || !ad::uniform(h, 8)) return false;
        auto r = atom_min_discrepancy(atomize(h), 3);  // proves D in {0, 2} infeasible
        return !r.min_discrepancy && r.lower_bound >= 4;
    });

    criterion("snd sweep: max over n <= 10^6 is 17, attained at 720720", 30.0, [] {
        i64 best = 0, argbest = 0;
        for (i64 n = 1; n <= 1'000'000; ++n) {
            i64 s = snd(n);
            if (s > best) { best = s; argbest = n; }
        }
        return best == 17 && argbest == 720720 && snd(720720) == 17;
    });

    os << (all_ok ? "all criteria passed" : "SOME CRITERIA FAILED") << '\n';
    return all_ok;
}

} // namespace discrep
