#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "discrep/errors.hpp"

namespace discrep {

using i64 = std::int64_t;

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("integer overflow in addition");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer overflow in multiplication");
    return r;
}

/// Least k >= 2 that does not divide n. Always a prime power.
inline i64 snd(i64 n) {
    if (n < 1) throw invalid_input("snd: n must be positive");
    i64 k = 2;
    while (n % k == 0) ++k;
    return k;
}

/// q = sum eta[i] * 2^i with every digit in {1,2}.
struct EtaDecomposition {
    i64 q = 0;
    int m = 0;
    std::vector<int> eta;
};

inline EtaDecomposition eta_decompose(i64 q) {
    if (q < 2) throw invalid_input("eta_decompose: q must be >= 2");
    // m is the unique integer with 2^m - 1 <= q <= 2^(m+1) - 2.
    int m = 0;
    while ((i64{2} << m) - 1 <= q) ++m;
    i64 rest = q - ((i64{1} << m) - 1);
    EtaDecomposition d{q, m, std::vector<int>(m, 1)};
    for (int i = 0; i < m; ++i)
        d.eta[i] += static_cast<int>((rest >> i) & 1);
    return d;
}

/// b in [1, q-1] with a*b == 1 (mod q).
inline i64 mod_inverse(i64 a, i64 q) {
    if (q < 2) throw invalid_input("mod_inverse: modulus must be >= 2");
    i64 a0 = ((a % q) + q) % q;
    if (std::gcd(a0, q) != 1)
        throw not_coprime("mod_inverse: " + std::to_string(a) + " is not coprime to " +
                          std::to_string(q));
    // extended Euclid on (a0, q)
    i64 old_r = a0, r = q, old_s = 1, s = 0;
    while (r != 0) {
        i64 quot = old_r / r;
        i64 tmp = old_r - quot * r; old_r = r; r = tmp;
        tmp = old_s - quot * s; old_s = s; s = tmp;
    }
    return ((old_s % q) + q) % q;
}

/// Odd delta in (-q, q) with q | n + eta_last * delta. Deterministic: of the two
/// representatives r and r - q of the solving residue, exactly one is odd.
inline i64 choose_delta(i64 n, i64 q, int eta_last) {
    if (q < 3 || q % 2 == 0) throw invalid_modulus("choose_delta: q must be odd and >= 3");
    if (n % q == 0) throw invalid_modulus("choose_delta: q divides n");
    i64 r = ((-(n % q) % q + q) % q * mod_inverse(eta_last, q)) % q;
    return (r % 2 != 0) ? r : r - q;
}

/// Odd t in (-19, 19) with 19 | 2n + 3t.
inline i64 choose_t19(i64 n) {
    if (n % 19 == 0) throw invalid_input("choose_t19: 19 divides n");
    i64 r = ((-(2 * (n % 19)) % 19 + 19) % 19 * mod_inverse(3, 19)) % 19;
    return (r % 2 != 0) ? r : r - 19;
}

} // namespace discrep
