#pragma once

#include <cassert>
#include <vector>

#include "gfp.hpp"
#include "linalg.hpp"

namespace cartan {

// Truncated divided-power algebra A(n,m) over GF(p): monomial basis
// {X^a : 0 <= a <= tau}, tau_i = p^{m_i} - 1. Monomials are addressed by a
// mixed-radix integer with radix p^{m_i} per coordinate, coordinate 1 most
// significant; that order fixes every computed basis downstream.
struct Shape {
    int p = 2;
    std::vector<int> m;
    std::vector<int> tau;
    std::vector<int> radix;
    std::vector<int> stride;  // place value of each coordinate
    int dim = 1;

    Shape() = default;
    Shape(int p_, std::vector<int> m_) : p(p_), m(std::move(m_)) {
        assert(fp_is_prime(p) && p < 16 && !m.empty());
        int n = int(m.size());
        tau.resize(n);
        radix.resize(n);
        stride.resize(n);
        long long total = 1;
        for (int i = 0; i < n; ++i) {
            assert(m[i] >= 1);
            long long r = 1;
            for (int k = 0; k < m[i]; ++k) r *= p;
            assert(r <= (1 << 30));
            radix[i] = int(r);
            tau[i] = int(r - 1);
            total *= r;
            assert(total <= (1 << 30));
        }
        dim = int(total);
        long long pv = 1;
        for (int i = n - 1; i >= 0; --i) {
            stride[i] = int(pv);
            pv *= radix[i];
        }
    }

    int n() const { return int(m.size()); }

    int encode(const std::vector<int>& a) const {
        assert(int(a.size()) == n());
        long long v = 0;
        for (int i = 0; i < n(); ++i) {
            assert(0 <= a[i] && a[i] <= tau[i]);
            v = v * radix[i] + a[i];
        }
        return int(v);
    }

    std::vector<int> decode(int idx) const {
        assert(0 <= idx && idx < dim);
        std::vector<int> a(n());
        for (int i = n() - 1; i >= 0; --i) {
            a[i] = idx % radix[i];
            idx /= radix[i];
        }
        return a;
    }

    int digit(int idx, int i) const { return (idx / stride[i]) % radix[i]; }

    bool operator==(const Shape& o) const { return p == o.p && m == o.m; }
    bool operator!=(const Shape& o) const { return !(*this == o); }
};

// binom(c, a) mod p by Lucas' theorem. p = 2 reduces to a bit-subset test.
inline fp_t binomial_mod_p(long long c, long long a, int p) {
    assert(0 <= a && a <= c);
    if (p == 2) return (a & (c - a)) == 0 ? 1 : 0;
    fp_t r = 1;
    while (a > 0 || c > 0) {
        int cd = int(c % p), ad = int(a % p);
        if (ad > cd) return 0;
        // binom(cd, ad) mod p for digits < p
        long long num = 1, den = 1;
        for (int k = 0; k < ad; ++k) {
            num *= cd - k;
            den *= k + 1;
        }
        r = fp_mul(r, fp_norm(num / den, p), p);
        c /= p;
        a /= p;
    }
    return r;
}

// Product over i of binom(c_i, a_i) mod p.
inline fp_t multi_binomial(const std::vector<int>& c, const std::vector<int>& a,
                           int p) {
    assert(c.size() == a.size());
    fp_t r = 1;
    for (size_t i = 0; i < c.size(); ++i) {
        assert(0 <= a[i] && a[i] <= c[i]);
        r = fp_mul(r, binomial_mod_p(c[i], a[i], p), p);
        if (r == 0) return 0;
    }
    return r;
}

// Element of A(n,m): dense coefficient vector indexed by encoded monomial.
struct DivPow {
    const Shape* shape = nullptr;
    Vec coeff;

    DivPow() = default;
    explicit DivPow(const Shape& s) : shape(&s), coeff(s.p, s.dim) {}

    bool is_zero() const { return coeff.is_zero(); }
    bool operator==(const DivPow& o) const { return coeff == o.coeff; }
};

inline DivPow dp_monomial(const Shape& s, int idx, fp_t c = 1) {
    DivPow f(s);
    f.coeff.set(idx, c % s.p);
    return f;
}

inline DivPow dp_monomial(const Shape& s, const std::vector<int>& a, fp_t c = 1) {
    return dp_monomial(s, s.encode(a), c);
}

inline DivPow dp_one(const Shape& s) { return dp_monomial(s, 0); }

// Product of basis monomials: index of X^a X^b and its coefficient, or -1
// when the product is zero (coefficient vanishes or a+b exceeds tau).
inline int dp_mul_basis(const Shape& s, int ia, int ib, fp_t* coeff_out) {
    if (s.p == 2) {
        // tau_i all-ones makes disjointness on packed bitfields exact:
        // binom(a+b, a) odd iff a AND b = 0, and then a+b = a OR b <= tau.
        if (ia & ib) return -1;
        *coeff_out = 1;
        return ia | ib;
    }
    fp_t c = 1;
    int idx = 0;
    for (int i = 0; i < s.n(); ++i) {
        int da = s.digit(ia, i), db = s.digit(ib, i);
        if (da + db > s.tau[i]) return -1;
        c = fp_mul(c, binomial_mod_p(da + db, da, s.p), s.p);
        if (c == 0) return -1;
        idx = idx * s.radix[i] + (da + db);
    }
    *coeff_out = c;
    return idx;
}

inline DivPow multiply(const DivPow& f, const DivPow& g) {
    assert(f.shape && g.shape && *f.shape == *g.shape);
    const Shape& s = *f.shape;
    DivPow out(s);
    for (int ia = 0; ia < s.dim; ++ia) {
        fp_t fa = f.coeff.get(ia);
        if (!fa) continue;
        for (int ib = 0; ib < s.dim; ++ib) {
            fp_t gb = g.coeff.get(ib);
            if (!gb) continue;
            fp_t c;
            int idx = dp_mul_basis(s, ia, ib, &c);
            if (idx < 0) continue;
            fp_t acc = fp_add(out.coeff.get(idx),
                              fp_mul(fp_mul(fa, gb, s.p), c, s.p), s.p);
            out.coeff.set(idx, acc);
        }
    }
    return out;
}

// Divided-power partial derivation: D_j X^(a) = X^(a - eps_j). 1-based j.
inline DivPow derive(const DivPow& f, int j) {
    assert(f.shape);
    const Shape& s = *f.shape;
    assert(1 <= j && j <= s.n());
    int i = j - 1;
    DivPow out(s);
    for (int idx = 0; idx < s.dim; ++idx) {
        fp_t c = f.coeff.get(idx);
        if (!c) continue;
        if (s.digit(idx, i) >= 1) out.coeff.set(idx - s.stride[i], c);
    }
    return out;
}

inline DivPow dp_add(const DivPow& f, const DivPow& g, fp_t scale = 1) {
    assert(f.shape && g.shape && *f.shape == *g.shape);
    DivPow out = f;
    out.coeff.add_scaled(g.coeff, scale);
    return out;
}

}  // namespace cartan
