#include "perspectra/arith.hpp"

#include "perspectra/errors.hpp"

#include <cstdlib>
#include <limits>

namespace perspectra {

i64 PrimePower::value() const { return ipow(p, e); }

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / gcd(a, b), b < 0 ? -b : b);
}

Bezout egcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer multiplication overflow");
    return r;
}

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer addition overflow");
    return r;
}

i64 ipow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<PrimePower> factorize(i64 n) {
    if (n == 0) throw PreconditionError("factorize: zero has no factorization");
    if (n == std::numeric_limits<i64>::min()) return {{2, 63}};
    n = n < 0 ? -n : n;
    std::vector<PrimePower> out;
    for (i64 d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw PreconditionError("valuation of zero is infinite");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 inv_mod(i64 a, i64 m) {
    auto [g, x, y] = egcd(mod(a, m), m);
    (void)y;
    if (g != 1) throw PreconditionError("inv_mod: element is not a unit");
    return mod(x, m);
}

i64 pow_mod(i64 base, i64 exp, i64 m) {
    i64 r = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) r = mod128(static_cast<i128>(r) * base, m);
        base = mod128(static_cast<i128>(base) * base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace perspectra
