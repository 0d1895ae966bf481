#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace perspectra {

using i64 = std::int64_t;
__extension__ typedef __int128 i128;

struct PrimePower {
    i64 p = 0;
    int e = 0;
    i64 value() const;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
    friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// Non-negative residue of a modulo m (m > 0).
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mod128(i128 a, i64 m) {
    i128 r = a % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct Bezout {
    i64 g, x, y;
};
Bezout egcd(i64 a, i64 b);

i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);
i64 ipow(i64 base, int exp);

bool is_prime(i64 n);

/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<PrimePower> factorize(i64 n);

/// p-adic valuation of a nonzero integer.
int valuation(i64 n, i64 p);

/// Inverse of a modulo m; requires gcd(a, m) == 1.
i64 inv_mod(i64 a, i64 m);

i64 pow_mod(i64 base, i64 exp, i64 m);

} // namespace perspectra
