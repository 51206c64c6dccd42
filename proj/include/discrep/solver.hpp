#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "discrep/errors.hpp"
#include "discrep/hypergraph.hpp"

namespace discrep {

enum class SolveMode { zero_only, minimize };

struct SolverOptions {
    std::int64_t node_budget = 100'000'000;
    int jobs = 1;
};

struct DiscrepancyReport {
    bool zero_feasible = false;
    std::optional<int> min_discrepancy;
    std::optional<std::vector<int>> witness;  // per-atom red-minus-blue differences
    std::int64_t nodes_explored = 0;
    SolveMode mode = SolveMode::zero_only;
    int lower_bound = 0;  // certified: minimum discrepancy >= lower_bound
};

inline const char* to_string(SolveMode m) {
    return m == SolveMode::zero_only ? "zero_only" : "minimize";
}

inline void write_report(std::ostream& os, const DiscrepancyReport& r) {
    os << "zero_feasible = " << (r.zero_feasible ? "true" : "false") << '\n';
    os << "min_discrepancy = ";
    if (r.min_discrepancy) os << *r.min_discrepancy; else os << "unknown";
    os << '\n';
    os << "witness = ";
    if (r.witness)
        for (std::size_t i = 0; i < r.witness->size(); ++i)
            os << (i ? "," : "") << (*r.witness)[i];
    os << '\n';
    os << "nodes_explored = " << r.nodes_explored << '\n';
    os << "mode = " << to_string(r.mode) << '\n';
}

namespace detail {

// One linear constraint sum of coef * d_atom with |sum| <= target_scale * D.
// Edges have scale 1. Pairs of edges with small symmetric difference
// contribute implied difference constraints at scale 2 (|S_e - S_f| <= 2D);
// these are redundant, so completeness is unaffected, but they make the
// swap-edge structure of the constructions propagate early.
struct Constraint {
    std::vector<int> atoms;
    std::vector<int> coefs;  // +1 / -1, parallel to atoms
    int scale = 1;
};

inline std::vector<Constraint> derive_constraints(const AtomSystem& a) {
    std::vector<Constraint> cons;
    for (const auto& ats : a.edge_atoms) {
        Constraint c;
        c.atoms = ats;
        c.coefs.assign(ats.size(), 1);
        cons.push_back(std::move(c));
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> seen;
    std::size_t ne = a.edge_atoms.size();
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t f = e + 1; f < ne; ++f) {
            const auto& ea = a.edge_atoms[e];
            const auto& fa = a.edge_atoms[f];
            Constraint c;
            c.scale = 2;
            std::size_t i = 0, j = 0;
            bool small = true;
            while ((i < ea.size() || j < fa.size()) && small) {
                if (j == fa.size() || (i < ea.size() && ea[i] < fa[j])) {
                    c.atoms.push_back(ea[i++]);
                    c.coefs.push_back(1);
                } else if (i == ea.size() || fa[j] < ea[i]) {
                    c.atoms.push_back(fa[j++]);
                    c.coefs.push_back(-1);
                } else {
                    ++i; ++j;
                }
                small = c.atoms.size() <= 4;
            }
            if (!small || c.atoms.empty()) continue;
            auto key = std::pair(c.atoms, c.coefs);
            auto neg = c.coefs;
            for (int& x : neg) x = -x;
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            if (std::find(seen.begin(), seen.end(), std::pair(c.atoms, neg)) != seen.end())
                continue;
            seen.push_back(key);
            cons.push_back(std::move(c));
        }
    return cons;
}

// Depth-first feasibility search for per-atom difference vectors d with
// |d_a| <= |a|, d_a == |a| (mod 2), and |sum_{a in e} d_a| <= target for
// every edge. At each node the unassigned atom with the fewest surviving
// values is branched (fail-first), with interval + parity propagation on
// every partially assigned constraint.
class AtomSearch {
public:
    AtomSearch(const AtomSystem& a, const std::vector<Constraint>& cons, int target)
        : atoms_(a), cons_(cons), target_(target) {
        int na = static_cast<int>(a.atom_sizes.size());
        atom_cons_.resize(na);
        for (int c = 0; c < static_cast<int>(cons_.size()); ++c)
            for (std::size_t k = 0; k < cons_[c].atoms.size(); ++k)
                atom_cons_[cons_[c].atoms[k]].push_back({c, cons_[c].coefs[k]});
        sum_.assign(cons_.size(), 0);
        rem_.assign(cons_.size(), 0);
        for (std::size_t c = 0; c < cons_.size(); ++c)
            for (int at : cons_[c].atoms)
                rem_[c] += a.atom_sizes[at];
        assignment_.assign(na, 0);
        assigned_.assign(na, false);
    }

    bool run(std::int64_t budget, std::int64_t& nodes) {
        budget_ = budget;
        nodes_ = 0;
        bool ok = initial_ok() && dfs(0);
        nodes = nodes_;
        return ok;
    }

    // Root-split parallel search; the verdict is independent of worker count.
    bool run_parallel(int jobs, std::int64_t budget, std::int64_t& nodes,
                      std::vector<int>& witness_out) {
        if (assignment_.empty() || jobs <= 1) {
            bool ok = run(budget, nodes);
            if (ok) witness_out = assignment_;
            return ok;
        }
        if (!initial_ok()) { nodes = 0; return false; }
        int root = select_atom();
        if (root < 0) { nodes = 0; return false; }
        auto vals = branch_values(root);
        std::atomic<bool> found{false};
        std::atomic<bool> exhausted{false};
        std::atomic<std::int64_t> total_nodes{0};
        std::vector<int> witness;
        std::mutex witness_mu;
        std::vector<std::thread> workers;
        int nworkers = std::max(1, std::min<int>(jobs, static_cast<int>(vals.size())));
        for (int w = 0; w < nworkers; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < vals.size(); i += nworkers) {
                    if (found.load()) break;
                    AtomSearch sub(atoms_, cons_, target_);
                    sub.budget_ = budget;
                    sub.stop_ = &found;
                    sub.assigned_[root] = true;
                    sub.push(root, vals[i]);
                    if (!sub.post_ok(root)) continue;
                    try {
                        if (sub.dfs(1)) {
                            std::lock_guard<std::mutex> lk(witness_mu);
                            if (!found.exchange(true)) witness = sub.assignment_;
                        }
                    } catch (const resource_exhausted&) {
                        exhausted.store(true);
                    }
                    total_nodes += sub.nodes_;
                }
            });
        }
        for (auto& t : workers) t.join();
        nodes = total_nodes.load();
        if (found.load()) { witness_out = witness; return true; }
        if (exhausted.load()) throw resource_exhausted("node budget exceeded");
        return false;
    }

    const std::vector<int>& assignment() const { return assignment_; }

private:
    bool initial_ok() const {
        for (std::size_t c = 0; c < cons_.size(); ++c)
            if (!cons_ok(c)) return false;
        return true;
    }

    bool cons_ok(std::size_t c) const {
        int t = target_ * cons_[c].scale;
        int lo = std::max(-t, sum_[c] - rem_[c]);
        int hi = std::min(t, sum_[c] + rem_[c]);
        if (lo > hi) return false;
        if (lo == hi) {
            int parity = ((rem_[c] + sum_[c]) % 2 + 2) % 2;
            if ((std::abs(lo) % 2) != parity) return false;
        }
        return true;
    }

    // Interval of values for one atom surviving propagation through every
    // constraint it appears in.
    std::pair<int, int> value_window(int atom) const {
        int size = atoms_.atom_sizes[atom];
        int lo = -size, hi = size;
        for (auto [c, coef] : atom_cons_[atom]) {
            int t = target_ * cons_[c].scale + rem_[c] - size;  // slack after this atom
            int vlo, vhi;
            if (coef > 0) { vlo = -t - sum_[c]; vhi = t - sum_[c]; }
            else { vlo = sum_[c] - t; vhi = sum_[c] + t; }
            lo = std::max(lo, vlo);
            hi = std::min(hi, vhi);
        }
        return {lo, hi};
    }

    int count_values(int atom) const {
        auto [lo, hi] = value_window(atom);
        if (lo > hi) return 0;
        int parity = atoms_.atom_sizes[atom] % 2;
        int first = lo + (((parity - lo) % 2 + 2) % 2);
        if (first > hi) return 0;
        return (hi - first) / 2 + 1;
    }

    // Unassigned atom with the fewest surviving values; ties prefer the
    // atom touching more constraints. -1 when everything is assigned.
    int select_atom() const {
        int best = -1, best_count = 0;
        std::size_t best_deg = 0;
        for (int at = 0; at < static_cast<int>(assignment_.size()); ++at) {
            if (assigned_[at]) continue;
            int cnt = count_values(at);
            if (cnt == 0) return at;
            if (best < 0 || cnt < best_count ||
                (cnt == best_count && atom_cons_[at].size() > best_deg)) {
                best = at;
                best_count = cnt;
                best_deg = atom_cons_[at].size();
            }
        }
        return best;
    }

    // Surviving values, magnitude ascending, positive first.
    std::vector<int> branch_values(int atom) const {
        int size = atoms_.atom_sizes[atom];
        auto [lo, hi] = value_window(atom);
        std::vector<int> vals;
        int parity = size % 2;
        if (lo > hi) return vals;
        if (parity == 0 && lo <= 0 && 0 <= hi) vals.push_back(0);
        for (int v = 2 - parity; v <= std::max(hi, -lo); v += 2) {
            if (v >= lo && v <= hi) vals.push_back(v);
            if (-v >= lo && -v <= hi) vals.push_back(-v);
        }
        return vals;
    }

    void push(int atom, int value) {
        assignment_[atom] = value;
        for (auto [c, coef] : atom_cons_[atom]) {
            sum_[c] += coef * value;
            rem_[c] -= atoms_.atom_sizes[atom];
        }
    }

    void pop(int atom, int value) {
        for (auto [c, coef] : atom_cons_[atom]) {
            sum_[c] -= coef * value;
            rem_[c] += atoms_.atom_sizes[atom];
        }
    }

    bool post_ok(int atom) const {
        for (auto [c, coef] : atom_cons_[atom])
            if (!cons_ok(c)) return false;
        return true;
    }

    bool dfs(int depth) {
        if (depth == static_cast<int>(assignment_.size())) return true;
        if (stop_ && stop_->load()) return false;
        int atom = select_atom();
        assigned_[atom] = true;
        for (int v : branch_values(atom)) {
            if (++nodes_ > budget_) throw resource_exhausted("node budget exceeded");
            push(atom, v);
            if (post_ok(atom) && dfs(depth + 1)) return true;
            pop(atom, v);
        }
        assigned_[atom] = false;
        return false;
    }

    const AtomSystem& atoms_;
    const std::vector<Constraint>& cons_;
    int target_;
    std::vector<std::vector<std::pair<int, int>>> atom_cons_;
    std::vector<int> sum_, rem_;
    std::vector<int> assignment_;
    std::vector<char> assigned_;
    std::int64_t budget_ = 0, nodes_ = 0;
    std::atomic<bool>* stop_ = nullptr;
};

inline bool feasible_at(const AtomSystem& a, const std::vector<Constraint>& cons, int target,
                        const SolverOptions& opt, std::int64_t& nodes,
                        std::vector<int>& witness) {
    AtomSearch search(a, cons, target);
    if (opt.jobs > 1) return search.run_parallel(opt.jobs, opt.node_budget, nodes, witness);
    bool ok = search.run(opt.node_budget, nodes);
    if (ok) witness = search.assignment();
    return ok;
}

} // namespace detail

inline DiscrepancyReport atom_zero_feasible(const AtomSystem& a, const SolverOptions& opt = {}) {
    DiscrepancyReport r;
    r.mode = SolveMode::zero_only;
    auto cons = detail::derive_constraints(a);
    std::vector<int> witness;
    r.zero_feasible = detail::feasible_at(a, cons, 0, opt, r.nodes_explored, witness);
    if (r.zero_feasible) {
        r.min_discrepancy = 0;
        r.witness = std::move(witness);
    } else {
        r.lower_bound = 1;
    }
    return r;
}

inline DiscrepancyReport atom_min_discrepancy(const AtomSystem& a,
                                              std::optional<int> cap = std::nullopt,
                                              const SolverOptions& opt = {}) {
    DiscrepancyReport r;
    r.mode = SolveMode::minimize;
    auto cons = detail::derive_constraints(a);
    bool any_odd = false, any_even = false;
    int max_edge_size = 0;
    for (const auto& ats : a.edge_atoms) {
        int sz = 0;
        for (int at : ats) sz += a.atom_sizes[at];
        (sz % 2 != 0 ? any_odd : any_even) = true;
        max_edge_size = std::max(max_edge_size, sz);
    }
    int start = any_odd ? 1 : 0;
    int step = (any_odd && any_even) ? 1 : 2;
    if (a.edge_atoms.empty()) { start = 0; step = 2; }

    for (int target = start; target <= max_edge_size; target += step) {
        if (cap && target > *cap) {
            r.lower_bound = target;  // every smaller candidate proven infeasible
            return r;
        }
        std::int64_t nodes = 0;
        std::vector<int> witness;
        bool ok = detail::feasible_at(a, cons, target, opt, nodes, witness);
        r.nodes_explored += nodes;
        if (ok) {
            r.min_discrepancy = target;
            r.lower_bound = target;
            r.zero_feasible = (target == 0);
            r.witness = std::move(witness);
            return r;
        }
    }
    // No edges: the minimum is the parity floor with the forced per-atom parities.
    r.min_discrepancy = start;
    r.lower_bound = start;
    r.zero_feasible = (start == 0);
    std::vector<int> w(a.atom_sizes.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.atom_sizes[i] % 2;
    r.witness = std::move(w);
    return r;
}

inline Coloring realize_coloring(const Hypergraph& h, const AtomSystem& a,
                                 const std::vector<int>& d) {
    if (d.size() != a.atom_sizes.size())
        throw infeasible_vector("difference vector length does not match atom count");
    Coloring c;
    c.colors.assign(h.num_vertices, Color::blue);
    for (std::size_t at = 0; at < d.size(); ++at) {
        int size = a.atom_sizes[at];
        if (std::abs(d[at]) > size || ((d[at] - size) % 2 + 2) % 2 != 0)
            throw infeasible_vector("atom " + std::to_string(at) +
                                    ": difference violates size or parity bound");
        int reds = (size + d[at]) / 2;
        for (int i = 0; i < reds; ++i)
            c.colors[a.atom_vertices[at][i]] = Color::red;
    }
    return c;
}

inline DiscrepancyReport brute_force_min_discrepancy(const Hypergraph& h) {
    if (h.num_vertices > 24)
        throw too_large("brute force capped at 24 vertices");
    int nv = h.num_vertices;
    // Bit V-1-v encodes vertex v so ascending masks scan colorings in
    // lexicographic order of the color vector.
    std::vector<std::uint32_t> masks;
    std::vector<int> sizes;
    for (const auto& edge : h.edges) {
        std::uint32_t m = 0;
        for (int v : edge) m |= (1u << (nv - 1 - v));
        masks.push_back(m);
        sizes.push_back(static_cast<int>(edge.size()));
    }
    int best = h.edges.empty() ? 0 : (h.num_vertices + 1);
    std::uint32_t best_mask = 0;
    std::uint64_t total = std::uint64_t{1} << nv;
    for (std::uint64_t k = 0; k < total; ++k) {
        int worst = 0;
        for (std::size_t e = 0; e < masks.size(); ++e) {
            int blue = std::popcount(static_cast<std::uint32_t>(k) & masks[e]);
            worst = std::max(worst, std::abs(sizes[e] - 2 * blue));
            if (worst >= best) break;
        }
        if (worst < best) {
            best = worst;
            best_mask = static_cast<std::uint32_t>(k);
            if (best == 0) break;  // lex-first already, nothing smaller exists
        }
    }
    DiscrepancyReport r;
    r.mode = SolveMode::minimize;
    r.min_discrepancy = h.edges.empty() ? 0 : best;
    r.lower_bound = *r.min_discrepancy;
    r.zero_feasible = (*r.min_discrepancy == 0);
    r.nodes_explored = static_cast<std::int64_t>(total);

    AtomSystem a = atomize(h);
    std::vector<int> d(a.atom_sizes.size(), 0);
    for (std::size_t at = 0; at < a.atom_vertices.size(); ++at)
        for (int v : a.atom_vertices[at])
            d[at] += ((best_mask >> (nv - 1 - v)) & 1) ? -1 : 1;
    r.witness = std::move(d);
    return r;
}

} // namespace discrep
