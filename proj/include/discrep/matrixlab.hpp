#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "discrep/builder.hpp"
#include "discrep/errors.hpp"
#include "discrep/numtheory.hpp"

namespace discrep {

/// Exact rational in lowest terms, positive denominator.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n) {}
    Rational(i64 n, i64 d) {
        if (d == 0) throw invalid_input("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i64 g = std::gcd(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        num = n / g;
        den = d / g;
    }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(checked_add(checked_mul(a.num, b.den), -checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw invalid_input("rational division by zero");
        return Rational(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
    }
    auto operator<=>(const Rational&) const = default;
    bool is_zero() const { return num == 0; }
    bool is_negative() const { return num < 0; }
    bool is_integer() const { return den == 1; }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num;
    if (r.den != 1) os << '/' << r.den;
    return os;
}

struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<i64> entries;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c, std::vector<i64> e = {}) : rows(r), cols(c), entries(std::move(e)) {
        if (r <= 0 || c <= 0) throw invalid_input("matrix dimensions must be positive");
        if (entries.empty()) entries.assign(static_cast<std::size_t>(r) * c, 0);
        if (entries.size() != static_cast<std::size_t>(r) * c)
            throw invalid_input("matrix entry count does not match dimensions");
    }

    i64& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
    i64 at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }
    bool operator==(const IntMatrix&) const = default;

    static IntMatrix identity(int k) {
        IntMatrix m(k, k);
        for (int i = 0; i < k; ++i) m.at(i, i) = 1;
        return m;
    }
    /// J_k - I_k: all ones off the diagonal.
    static IntMatrix ones_minus_identity(int k) {
        IntMatrix m(k, k, std::vector<i64>(static_cast<std::size_t>(k) * k, 1));
        for (int i = 0; i < k; ++i) m.at(i, i) = 0;
        return m;
    }
};

inline void write_matrix(std::ostream& os, const IntMatrix& m) {
    os << "M " << m.rows << ' ' << m.cols << '\n';
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) os << (c ? " " : "") << m.at(r, c);
        os << '\n';
    }
}

inline IntMatrix read_matrix(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw parse_error(1, "missing header");
    std::istringstream hs(line);
    std::string tag;
    long rows = 0, cols = 0;
    if (!(hs >> tag >> rows >> cols) || tag != "M" || rows <= 0 || cols <= 0)
        throw parse_error(1, "expected header \"M <rows> <cols>\"");
    IntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (int r = 0; r < m.rows; ++r) {
        long lineno = r + 2;
        if (!std::getline(is, line)) throw parse_error(lineno, "missing matrix row");
        std::istringstream rs(line);
        for (int c = 0; c < m.cols; ++c)
            if (!(rs >> m.at(r, c))) throw parse_error(lineno, "expected integer entry");
        i64 extra;
        if (rs >> extra) throw parse_error(lineno, "trailing tokens in matrix row");
    }
    return m;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline i64 exact_det(const IntMatrix& m) {
    if (m.rows != m.cols) throw not_square("determinant of a non-square matrix");
    int k = m.rows;
    std::vector<__int128> a(m.entries.begin(), m.entries.end());
    auto at = [&](int r, int c) -> __int128& { return a[static_cast<std::size_t>(r) * k + c]; };
    int sign = 1;
    __int128 prev = 1;
    for (int p = 0; p < k - 1; ++p) {
        if (at(p, p) == 0) {
            int swap_row = -1;
            for (int r = p + 1; r < k; ++r)
                if (at(r, p) != 0) { swap_row = r; break; }
            if (swap_row < 0) return 0;
            for (int c = 0; c < k; ++c) std::swap(at(p, c), at(swap_row, c));
            sign = -sign;
        }
        for (int r = p + 1; r < k; ++r)
            for (int c = p + 1; c < k; ++c)
                at(r, c) = (at(r, c) * at(p, p) - at(r, p) * at(p, c)) / prev;
        prev = at(p, p);
    }
    __int128 det = sign * at(k - 1, k - 1);
    if (det > INT64_MAX || det < INT64_MIN) throw overflow_error("determinant overflows 64 bits");
    return static_cast<i64>(det);
}

/// Builds the eta vector family for q and checks |det| = q and <v_i, u> = q.
inline bool verify_v_matrix(i64 q) {
    if (q < 3) throw invalid_input("verify_v_matrix: q must be >= 3");
    auto d = eta_decompose(q);
    auto f = build_vectors(d);
    for (const auto& v : f.v)
        if (detail::dot(v, f.u) != q) return false;
    IntMatrix m(d.m, d.m);
    for (int r = 0; r < d.m; ++r)
        for (int c = 0; c < d.m; ++c)
            m.at(r, c) = f.v[r][c];
    i64 det = exact_det(m);
    return det == q || det == -q;
}

struct LinSolveResult {
    enum class Status { unique, underdetermined, inconsistent };
    Status status = Status::inconsistent;
    std::vector<Rational> point;  // set when unique
    int solution_dim = -1;        // set when underdetermined
};

/// Solves Mx = e (all-ones right side) exactly over the rationals.
inline LinSolveResult solve_Mx_e(const IntMatrix& m) {
    int rows = m.rows, cols = m.cols;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) a[r][c] = Rational(m.at(r, c));
        a[r][cols] = Rational(1);
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int r = row; r < rows; ++r)
            if (!a[r][col].is_zero()) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(a[row], a[pr]);
        Rational inv = Rational(1) / a[row][col];
        for (int c = col; c <= cols; ++c) a[row][c] = a[row][c] * inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            Rational factor = a[r][col];
            for (int c = col; c <= cols; ++c) a[r][c] = a[r][c] - factor * a[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < rows; ++r)
        if (!a[r][cols].is_zero()) {
            LinSolveResult res;
            res.status = LinSolveResult::Status::inconsistent;
            return res;
        }
    LinSolveResult res;
    if (static_cast<int>(pivot_col.size()) == cols) {
        res.status = LinSolveResult::Status::unique;
        res.point.assign(cols, Rational(0));
        for (int i = 0; i < cols; ++i) res.point[pivot_col[i]] = a[i][cols];
    } else {
        res.status = LinSolveResult::Status::underdetermined;
        res.solution_dim = cols - static_cast<int>(pivot_col.size());
    }
    return res;
}

struct MembershipResult {
    bool in_M = false;
    std::vector<Rational> x;  // x^M when in_M
    i64 z = 0;                // least multiplier making x^M integral
    std::vector<i64> y;       // z * x^M
};

namespace detail {

inline int rational_rank(const IntMatrix& m, const std::vector<int>& cols_subset) {
    int rows = m.rows;
    int nc = static_cast<int>(cols_subset.size());
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(nc));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < nc; ++c) a[r][c] = Rational(m.at(r, cols_subset[c]));
    int rank = 0;
    for (int col = 0; col < nc && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (!a[r][col].is_zero()) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(a[rank], a[pr]);
        for (int r = rank + 1; r < rows; ++r) {
            if (a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[rank][col];
            for (int c = col; c < nc; ++c) a[r][c] = a[r][c] - f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

inline IntMatrix submatrix_cols(const IntMatrix& m, const std::vector<int>& cols_subset) {
    IntMatrix s(m.rows, static_cast<int>(cols_subset.size()));
    for (int r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < cols_subset.size(); ++c)
            s.at(r, static_cast<int>(c)) = m.at(r, cols_subset[c]);
    return s;
}

} // namespace detail

/// Decides whether {x >= 0 : Mx = e} is a single point, by enumerating the
/// basic feasible solutions of the polytope. A zero column gives a recession
/// direction, so uniqueness is impossible once the system is feasible at all.
inline MembershipResult is_in_M(const IntMatrix& m) {
    if (m.cols > 12) throw too_large("membership test capped at 12 columns");
    for (i64 v : m.entries)
        if (v != 0 && v != 1) throw not_zero_one("membership test requires 0/1 entries");
    MembershipResult res;
    for (int c = 0; c < m.cols; ++c) {
        bool zero = true;
        for (int r = 0; r < m.rows; ++r)
            if (m.at(r, c) != 0) { zero = false; break; }
        if (zero) return res;  // unbounded direction: never a single point
    }
    std::vector<int> all_cols(m.cols);
    std::iota(all_cols.begin(), all_cols.end(), 0);
    int rank = detail::rational_rank(m, all_cols);

    std::set<std::vector<Rational>> vertices;
    std::vector<int> subset(rank);
    auto recurse = [&](auto&& self, int pos, int next) -> void {
        if (pos == rank) {
            if (detail::rational_rank(m, subset) != rank) return;
            auto sol = solve_Mx_e(detail::submatrix_cols(m, subset));
            if (sol.status != LinSolveResult::Status::unique) return;
            std::vector<Rational> full(m.cols, Rational(0));
            for (int i = 0; i < rank; ++i) {
                if (sol.point[i].is_negative()) return;
                full[subset[i]] = sol.point[i];
            }
            vertices.insert(std::move(full));
            return;
        }
        for (int c = next; c <= m.cols - (rank - pos); ++c) {
            subset[pos] = c;
            self(self, pos + 1, c + 1);
        }
    };
    if (rank > 0) recurse(recurse, 0, 0);
    if (vertices.size() != 1) return res;

    res.in_M = true;
    res.x = *vertices.begin();
    res.z = 1;
    for (const auto& r : res.x) res.z = std::lcm(res.z, r.den);
    for (const auto& r : res.x) res.y.push_back(r.num * (res.z / r.den));
    return res;
}

/// Smallest-row-count 0/1 matrix with z(M) = n, exhausting all candidates with
/// at most max_rows rows. Columns are restricted to the support of x^M (a
/// column at value zero can always be dropped without changing membership or z),
/// so every candidate has at most as many columns as rows.
inline std::optional<IntMatrix> t_search(i64 n, int max_rows) {
    if (n < 1 || n > 4 || max_rows < 1 || max_rows > 5)
        throw too_large("t_search capped at n <= 4, max_rows <= 5");
    for (int r = 1; r <= max_rows; ++r) {
        std::optional<IntMatrix> best;
        int npatterns = (1 << r) - 1;
        std::vector<int> chosen;
        auto consider = [&]() {
            int c = static_cast<int>(chosen.size());
            IntMatrix m(r, c);
            for (int j = 0; j < c; ++j)
                for (int i = 0; i < r; ++i)
                    m.at(i, j) = (chosen[j] >> (r - 1 - i)) & 1;
            auto mem = is_in_M(m);
            if (!mem.in_M || mem.z != n) return;
            if (!best || std::pair(m.cols, m.entries) < std::pair(best->cols, best->entries))
                best = m;
        };
        auto recurse = [&](auto&& self, int next) -> void {
            if (!chosen.empty() && static_cast<int>(chosen.size()) <= r) consider();
            if (static_cast<int>(chosen.size()) == r) return;
            for (int p = next; p <= npatterns; ++p) {
                chosen.push_back(p);
                self(self, p + 1);
                chosen.pop_back();
            }
        };
        recurse(recurse, 1);
        if (best) return best;
    }
    return std::nullopt;
}

} // namespace discrep
