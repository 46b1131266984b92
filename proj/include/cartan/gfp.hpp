#pragma once

#include <cassert>
#include <cstdint>

namespace cartan {

// Residue arithmetic mod a small prime p (p < 16). Residues live in [0, p).
using fp_t = int;

inline bool fp_is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline fp_t fp_norm(long long v, int p) {
    long long r = v % p;
    return static_cast<fp_t>(r < 0 ? r + p : r);
}

inline fp_t fp_add(fp_t a, fp_t b, int p) {
    int s = a + b;
    return s >= p ? s - p : s;
}

inline fp_t fp_sub(fp_t a, fp_t b, int p) {
    int s = a - b;
    return s < 0 ? s + p : s;
}

inline fp_t fp_neg(fp_t a, int p) { return a == 0 ? 0 : p - a; }

inline fp_t fp_mul(fp_t a, fp_t b, int p) { return (a * b) % p; }

inline fp_t fp_pow(fp_t a, long long e, int p) {
    assert(e >= 0);
    fp_t r = 1 % p;
    fp_t base = a;
    while (e > 0) {
        if (e & 1) r = fp_mul(r, base, p);
        base = fp_mul(base, base, p);
        e >>= 1;
    }
    return r;
}

inline fp_t fp_inv(fp_t a, int p) {
    assert(a != 0);
    return fp_pow(a, p - 2, p);  // Fermat; p prime
}

}  // namespace cartan
