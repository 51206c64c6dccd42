#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "discrep/errors.hpp"
#include "discrep/hypergraph.hpp"
#include "discrep/numtheory.hpp"

namespace discrep {

enum class BuildMethod { single_odd, three_edge, main_odd, main_pow2, example19, amplified };

inline const char* to_string(BuildMethod m) {
    switch (m) {
        case BuildMethod::single_odd: return "single_odd";
        case BuildMethod::three_edge: return "three_edge";
        case BuildMethod::main_odd: return "main_odd";
        case BuildMethod::main_pow2: return "main_pow2";
        case BuildMethod::example19: return "example19";
        case BuildMethod::amplified: return "amplified";
    }
    return "?";
}

struct Correction {
    i64 edge_index = 0;
    bool pad = false;  // false: trim
    i64 count = 0;
};

/// Full provenance of a build.
struct ConstructionCertificate {
    BuildMethod method = BuildMethod::single_odd;
    i64 n = 0;
    std::optional<i64> q;
    int m = 0;
    std::vector<int> eta;
    i64 shift = 0;               // delta for the main methods, t for example19
    std::vector<i64> x;
    std::vector<Correction> corrections;
    i64 edge_count = 0;
    bool bound_7m_ok = true;
};

inline void write_certificate(std::ostream& os, const ConstructionCertificate& c) {
    os << "method = " << to_string(c.method) << '\n';
    os << "n = " << c.n << '\n';
    os << "q = ";
    if (c.q) os << *c.q;
    os << '\n';
    os << "m = " << c.m << '\n';
    os << "eta = ";
    for (std::size_t i = 0; i < c.eta.size(); ++i) os << (i ? "," : "") << c.eta[i];
    os << '\n';
    os << "shift = " << c.shift << '\n';
    os << "x = ";
    for (std::size_t i = 0; i < c.x.size(); ++i) os << (i ? "," : "") << c.x[i];
    os << '\n';
    os << "corrections = ";
    for (std::size_t i = 0; i < c.corrections.size(); ++i) {
        const auto& cor = c.corrections[i];
        os << (i ? ";" : "") << cor.edge_index << ',' << (cor.pad ? "pad" : "trim") << ','
           << cor.count;
    }
    os << '\n';
    os << "edge_count = " << c.edge_count << '\n';
    os << "bound_7m_ok = " << (c.bound_7m_ok ? "true" : "false") << '\n';
}

using Build = std::pair<Hypergraph, ConstructionCertificate>;

/// The m row vectors v_0..v_{m-1}; every <v_i, u> equals q for u = (1,2,...,2^{m-1}).
struct VectorFamily {
    std::vector<std::vector<i64>> v;
    std::vector<i64> u;
};

inline VectorFamily build_vectors(const EtaDecomposition& d) {
    VectorFamily f;
    std::vector<i64> base(d.eta.begin(), d.eta.end());
    f.v.push_back(base);
    for (int i = 1; i < d.m; ++i) {
        auto row = base;
        row[i - 1] += 2;
        row[i] -= 1;
        f.v.push_back(row);
    }
    for (int i = 0; i < d.m; ++i)
        f.u.push_back(i64{1} << i);
    return f;
}

namespace detail {

inline i64 dot(const std::vector<i64>& a, const std::vector<i64>& b) {
    i64 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

} // namespace detail

inline std::vector<i64> solve_x_odd(i64 n, i64 q, const EtaDecomposition& d, i64 delta) {
    i64 num = checked_add(n, checked_mul(d.eta[d.m - 1], delta));
    if (q % 2 == 0 || num % q != 0)
        throw invalid_modulus("solve_x_odd: q must be odd and divide n + eta_last*delta");
    std::vector<i64> x(d.m);
    x[0] = num / q;
    for (int i = 1; i <= d.m - 2; ++i)
        x[i] = checked_mul(i64{1} << i, x[0]);
    x[d.m - 1] = checked_add(checked_mul(i64{1} << (d.m - 1), x[0]), -delta);
    for (i64 xi : x)
        if (xi <= 0)
            throw non_positive_block("solve_x_odd: block size " + std::to_string(xi) +
                                     " not positive (n too small for q=" + std::to_string(q) + ")");
    auto f = build_vectors(d);
    for (int i = 0; i < d.m; ++i) {
        i64 want = (i == d.m - 1) ? n + delta : n;
        if (detail::dot(f.v[i], x) != want)
            throw invalid_input("solve_x_odd: inner-product check failed");
    }
    return x;
}

inline std::vector<i64> solve_x_pow2(i64 n, int m) {
    if (m < 3) throw invalid_input("solve_x_pow2: m must be >= 3");
    i64 q = i64{1} << m;
    if (snd(n) != q || ((n % q) + q) % q != q / 2)
        throw wrong_residue("solve_x_pow2: requires snd(n) = 2^m, hence n = 2^(m-1) mod 2^m");
    std::vector<i64> x(m);
    x[0] = (n + q / 2) / q;
    x[1] = 2 * x[0] - 1;
    for (int i = 2; i <= m - 2; ++i)
        x[i] = checked_mul(i64{1} << (i - 1), x[1]);
    x[m - 1] = checked_mul(i64{1} << (m - 2), x[1]) - 1;
    for (i64 xi : x)
        if (xi <= 0) throw non_positive_block("solve_x_pow2: non-positive block size");
    auto f = build_vectors(eta_decompose(q));
    for (int i = 0; i < m; ++i) {
        i64 want = (i == 1 || i == m - 1) ? n + 1 : n;
        if (detail::dot(f.v[i], x) != want)
            throw invalid_input("solve_x_pow2: inner-product check failed");
    }
    return x;
}

inline Build build_single_odd(i64 n) {
    if (n < 1 || n % 2 == 0) throw wrong_parity("build_single_odd: n must be odd");
    Hypergraph h;
    h.num_vertices = static_cast<int>(n);
    std::vector<int> edge(n);
    std::iota(edge.begin(), edge.end(), 0);
    h.edges.push_back(std::move(edge));
    ConstructionCertificate c;
    c.method = BuildMethod::single_odd;
    c.n = n;
    c.edge_count = 1;
    return {std::move(h), std::move(c)};
}

inline Build build_three(i64 n) {
    if (n < 2 || n % 4 != 2) throw wrong_residue("build_three: n must be 2 mod 4");
    i64 half = n / 2;
    Hypergraph h;
    h.num_vertices = static_cast<int>(3 * half);
    auto range_pair = [&](i64 s1, i64 s2) {
        std::vector<int> e;
        for (i64 v = s1; v < s1 + half; ++v) e.push_back(static_cast<int>(v));
        for (i64 v = s2; v < s2 + half; ++v) e.push_back(static_cast<int>(v));
        std::sort(e.begin(), e.end());
        return e;
    };
    h.edges.push_back(range_pair(0, half));         // X u Y
    h.edges.push_back(range_pair(half, 2 * half));  // Y u Z
    h.edges.push_back(range_pair(0, 2 * half));     // X u Z
    ConstructionCertificate c;
    c.method = BuildMethod::three_edge;
    c.n = n;
    c.edge_count = 3;
    return {std::move(h), std::move(c)};
}

namespace detail {

// k-subsets of {0..3} in lexicographic order of the sorted element tuples.
inline std::vector<std::vector<int>> four_choose(int k) {
    std::vector<std::vector<int>> out;
    for (int a = 0; a < 4; ++a) {
        if (k == 1) { out.push_back({a}); continue; }
        for (int b = a + 1; b < 4; ++b) {
            if (k == 2) { out.push_back({a, b}); continue; }
            for (int c = b + 1; c < 4; ++c)
                if (k == 3) out.push_back({a, b, c});
        }
    }
    return out;
}

// Pads (fresh per-edge vertices) or trims (largest ids first) every edge to
// size n; appends pad vertices to the vertex pool and records each change.
inline void correct_edges(Hypergraph& h, ConstructionCertificate& cert, i64 n) {
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        auto& edge = h.edges[e];
        i64 sz = static_cast<i64>(edge.size());
        if (sz == n) continue;
        if (sz < n) {
            i64 need = n - sz;
            for (i64 i = 0; i < need; ++i)
                edge.push_back(h.num_vertices++);
            cert.corrections.push_back({static_cast<i64>(e), true, need});
        } else {
            edge.resize(static_cast<std::size_t>(n));
            cert.corrections.push_back({static_cast<i64>(e), false, sz - n});
        }
    }
}

} // namespace detail

inline Build build_main(i64 n) {
    if (n < 1 || n % 2 != 0) throw dispatch_error("build_main: n must be even");
    if (n % 4 == 2) throw dispatch_error("build_main: n = 2 mod 4 is handled by build_three");
    i64 q = snd(n);
    bool pow2 = (q & (q - 1)) == 0;
    EtaDecomposition d = eta_decompose(q);
    i64 delta = 0;
    std::vector<i64> x;
    if (pow2) {
        if (q < 8) throw dispatch_error("build_main: snd(n) < 8 power of two cannot occur here");
        x = solve_x_pow2(n, d.m);
    } else {
        delta = choose_delta(n, q, d.eta[d.m - 1]);
        x = solve_x_odd(n, q, d, delta);
    }

    // Layout: copy j of block k occupies a contiguous id range; blocks and
    // copies ascending, pad vertices appended afterwards.
    int m = d.m;
    std::vector<std::vector<i64>> start(m, std::vector<i64>(4));
    i64 off = 0;
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < 4; ++j) {
            start[k][j] = off;
            off += x[k];
        }

    Hypergraph h;
    h.num_vertices = static_cast<int>(off);
    auto make_edge = [&](const std::vector<std::vector<int>>& copies) {
        std::vector<int> e;
        for (int k = 0; k < m; ++k)
            for (int j : copies[k])
                for (i64 v = start[k][j]; v < start[k][j] + x[k]; ++v)
                    e.push_back(static_cast<int>(v));
        return e;
    };
    std::vector<std::vector<int>> base_copies(m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < d.eta[k]; ++j)
            base_copies[k].push_back(j);

    h.edges.push_back(make_edge(base_copies));  // e_0
    for (int k = 0; k < m; ++k)
        for (const auto& r : detail::four_choose(d.eta[k])) {
            auto copies = base_copies;
            copies[k] = r;
            h.edges.push_back(make_edge(copies));
        }
    for (int k = 1; k < m; ++k) {
        auto copies = base_copies;
        copies[k - 1].clear();
        for (int j = 0; j < d.eta[k - 1] + 2; ++j) copies[k - 1].push_back(j);
        copies[k].clear();
        for (int j = 0; j < d.eta[k] - 1; ++j) copies[k].push_back(j);
        h.edges.push_back(make_edge(copies));
    }

    ConstructionCertificate cert;
    cert.method = pow2 ? BuildMethod::main_pow2 : BuildMethod::main_odd;
    cert.n = n;
    cert.q = q;
    cert.m = m;
    cert.eta = d.eta;
    cert.shift = delta;
    cert.x = x;
    detail::correct_edges(h, cert, n);
    cert.edge_count = static_cast<i64>(h.edges.size());
    cert.bound_7m_ok = cert.edge_count <= 7 * i64{m};
    return {std::move(h), std::move(cert)};
}

inline Build build_example19(i64 n) {
    if (n < 1) throw invalid_input("build_example19: n must be positive");
    if (n % 19 == 0) throw not_applicable("build_example19: 19 divides n");
    i64 t = choose_t19(n);
    // Solve 3a + 5b = n, a + 8b = n + t (determinant 19).
    i64 a = (3 * n - 5 * t) / 19;
    i64 b = (2 * n + 3 * t) / 19;
    if (a <= 0 || b <= 0)
        throw non_positive_block("build_example19: block size not positive for n=" +
                                 std::to_string(n));
    if (b - t < 0)
        throw non_positive_block("build_example19: |C| = b - t negative for n=" + std::to_string(n));

    // Layout: A_1..A_3 (size a), B_1..B_8 (size b), then the fresh set T when t < 0.
    auto block = [&](i64 first, i64 size) {
        std::vector<int> v;
        for (i64 i = first; i < first + size; ++i) v.push_back(static_cast<int>(i));
        return v;
    };
    std::vector<std::vector<int>> A(3), B(8);
    for (int i = 0; i < 3; ++i) A[i] = block(i * a, a);
    for (int i = 0; i < 8; ++i) B[i] = block(3 * a + i * b, b);
    i64 nv = 3 * a + 8 * b;
    std::vector<int> C = B[0];
    if (t < 0) {
        for (i64 i = 0; i < -t; ++i) C.push_back(static_cast<int>(nv++));
    } else {
        C.resize(static_cast<std::size_t>(b - t));  // drop the t largest ids of B_1
    }

    Hypergraph h;
    h.num_vertices = static_cast<int>(nv);
    auto add = [&](std::vector<const std::vector<int>*> parts) {
        std::vector<int> e;
        for (const auto* p : parts) e.insert(e.end(), p->begin(), p->end());
        std::sort(e.begin(), e.end());
        h.edges.push_back(std::move(e));
    };
    add({&A[0], &A[1], &A[2], &B[0], &B[1], &B[2], &B[3], &B[4]});
    add({&A[0], &A[1], &A[2], &B[0], &B[1], &B[2], &B[3], &B[5]});
    add({&A[0], &A[1], &A[2], &B[0], &B[1], &B[2], &B[3], &B[6]});
    add({&A[0], &A[1], &A[2], &B[0], &B[1], &B[2], &B[3], &B[7]});
    add({&A[0], &A[1], &A[2], &B[1], &B[2], &B[3], &B[4], &B[7]});
    add({&A[0], &A[1], &A[2], &B[0], &B[2], &B[3], &B[4], &B[7]});
    add({&A[0], &A[1], &A[2], &B[0], &B[1], &B[3], &B[4], &B[7]});
    add({&A[0], &A[1], &A[2], &B[0], &B[1], &B[2], &B[4], &B[7]});
    add({&A[0], &C, &B[1], &B[2], &B[3], &B[4], &B[5], &B[6], &B[7]});
    add({&A[1], &C, &B[1], &B[2], &B[3], &B[4], &B[5], &B[6], &B[7]});
    add({&A[2], &C, &B[1], &B[2], &B[3], &B[4], &B[5], &B[6], &B[7]});

    ConstructionCertificate cert;
    cert.method = BuildMethod::example19;
    cert.n = n;
    cert.q = 19;
    cert.shift = t;
    cert.x = {a, b};
    cert.edge_count = 11;
    return {std::move(h), std::move(cert)};
}

inline Build build_auto(i64 n) {
    if (n < 1) throw invalid_input("build_auto: n must be positive");
    if (n % 2 != 0) return build_single_odd(n);
    if (n % 4 == 2) return build_three(n);
    return build_main(n);
}

inline Build amplify(i64 n, i64 r, i64 edge_cap = 1'000'000) {
    if (n < 1 || r < 1) throw invalid_input("amplify: n and r must be positive");
    i64 h_size = (2 * n + r) / (2 * r);  // nearest integer to n/r, ties up
    i64 l = checked_mul(r, h_size) - n;
    auto [base, base_cert] = build_auto(h_size);

    i64 copies = 2 * r - 1;
    i64 base_edges = static_cast<i64>(base.edges.size());
    // C(2r-1, r) * |E(base)|^r, overflow- and cap-checked.
    i64 count = 1;
    for (i64 i = 0; i < r; ++i) {
        count = checked_mul(count, copies - i);
        count /= (i + 1);
    }
    for (i64 i = 0; i < r; ++i) {
        count = checked_mul(count, base_edges);
        if (count > edge_cap)
            throw amplifier_overflow("amplify: edge count exceeds cap of " +
                                     std::to_string(edge_cap));
    }

    Hypergraph out;
    out.num_vertices = static_cast<int>(copies * base.num_vertices);
    std::vector<int> subset(r);
    std::iota(subset.begin(), subset.end(), 0);
    auto next_subset = [&]() {
        int i = static_cast<int>(r) - 1;
        while (i >= 0 && subset[i] == copies - r + i) --i;
        if (i < 0) return false;
        ++subset[i];
        for (int j = i + 1; j < r; ++j) subset[j] = subset[j - 1] + 1;
        return true;
    };
    do {
        std::vector<i64> pick(r, 0);  // odometer over edge choices, last fastest
        for (;;) {
            std::vector<int> e;
            for (i64 i = 0; i < r; ++i) {
                i64 shift = i64{subset[static_cast<std::size_t>(i)]} * base.num_vertices;
                for (int v : base.edges[static_cast<std::size_t>(pick[i])])
                    e.push_back(static_cast<int>(v + shift));
            }
            out.edges.push_back(std::move(e));
            i64 i = r - 1;
            while (i >= 0 && ++pick[i] == base_edges) pick[i--] = 0;
            if (i < 0) break;
        }
    } while (next_subset());

    ConstructionCertificate cert = base_cert;
    cert.method = BuildMethod::amplified;
    cert.n = n;
    cert.corrections.clear();
    if (l != 0) {
        for (std::size_t e = 0; e < out.edges.size(); ++e) {
            if (l > 0) {
                out.edges[e].resize(out.edges[e].size() - static_cast<std::size_t>(l));
                cert.corrections.push_back({static_cast<i64>(e), false, l});
            } else {
                for (i64 i = 0; i < -l; ++i)
                    out.edges[e].push_back(out.num_vertices++);
                cert.corrections.push_back({static_cast<i64>(e), true, -l});
            }
        }
    }
    cert.edge_count = static_cast<i64>(out.edges.size());
    return {std::move(out), std::move(cert)};
}

} // namespace discrep
