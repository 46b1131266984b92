#pragma once

#include <cassert>
#include <vector>

#include "divided_power.hpp"
#include "gfp.hpp"
#include "linalg.hpp"

namespace cartan {

// Element of W(n,m): Sum_j f_j D_j with f_j in A(n,m). Flattened coordinates
// are component-major: index j*dim(A) + monomial, j = 0..n-1.
struct Derivation {
    const Shape* shape = nullptr;
    std::vector<DivPow> comp;

    Derivation() = default;
    explicit Derivation(const Shape& s) : shape(&s), comp(s.n(), DivPow(s)) {}

    bool is_zero() const {
        for (const auto& f : comp)
            if (!f.is_zero()) return false;
        return true;
    }
    bool operator==(const Derivation& o) const { return comp == o.comp; }
};

inline int witt_dim(const Shape& s) { return s.n() * s.dim; }

inline Vec derivation_to_vec(const Derivation& u) {
    const Shape& s = *u.shape;
    Vec v(s.p, witt_dim(s));
    for (int j = 0; j < s.n(); ++j)
        for (int a = 0; a < s.dim; ++a) {
            fp_t c = u.comp[j].coeff.get(a);
            if (c) v.set(j * s.dim + a, c);
        }
    return v;
}

inline Derivation vec_to_derivation(const Shape& s, const Vec& v) {
    assert(v.size() == witt_dim(s) && v.p() == s.p);
    Derivation u(s);
    for (int j = 0; j < s.n(); ++j)
        for (int a = 0; a < s.dim; ++a) {
            fp_t c = v.get(j * s.dim + a);
            if (c) u.comp[j].coeff.set(a, c);
        }
    return u;
}

// Basis element X^(a) D_j of W(n,m); j is 1-based.
inline Derivation witt_basis_element(const Shape& s, int monomial, int j) {
    assert(1 <= j && j <= s.n());
    Derivation u(s);
    u.comp[j - 1] = dp_monomial(s, monomial);
    return u;
}

// [u, v] = Sum_k ( Sum_i u_i D_i(v_k) - v_i D_i(u_k) ) D_k.
inline Derivation bracket_derivations(const Derivation& u, const Derivation& v) {
    assert(u.shape && v.shape && *u.shape == *v.shape);
    const Shape& s = *u.shape;
    Derivation out(s);
    for (int k = 0; k < s.n(); ++k) {
        DivPow acc(s);
        for (int i = 0; i < s.n(); ++i) {
            if (!u.comp[i].is_zero())
                acc = dp_add(acc, multiply(u.comp[i], derive(v.comp[k], i + 1)));
            if (!v.comp[i].is_zero())
                acc = dp_add(acc, multiply(v.comp[i], derive(u.comp[k], i + 1)),
                             fp_neg(1, s.p));
        }
        out.comp[k] = acc;
    }
    return out;
}

// Coefficient of a_{i+j-1} in [a_i, a_j] for W(1,(l)): the displayed value
// binom(i+j-1, i) - binom(i+j-1, j) mod p. Independent cross-check only.
inline fp_t witt1_structure_constant(int i, int j, int p) {
    assert(i >= 0 && j >= 0);
    auto safe_binom = [p](int n, int k) -> fp_t {
        if (n < 0 || k < 0 || k > n) return 0;
        return binomial_mod_p(n, k, p);
    };
    return fp_sub(safe_binom(i + j - 1, i), safe_binom(i + j - 1, j), p);
}

// div(Sum f_j D_j) = Sum D_j(f_j).
inline DivPow divergence(const Derivation& u) {
    assert(u.shape);
    const Shape& s = *u.shape;
    DivPow out(s);
    for (int j = 0; j < s.n(); ++j)
        out = dp_add(out, derive(u.comp[j], j + 1));
    return out;
}

// D_ij(f) = D_j(f) D_i - D_i(f) D_j, 1 <= i < j <= n. Image lies in ker(div).
inline Derivation d_ij(const DivPow& f, int i, int j) {
    assert(f.shape);
    const Shape& s = *f.shape;
    assert(1 <= i && i < j && j <= s.n());
    Derivation out(s);
    out.comp[i - 1] = derive(f, j);
    out.comp[j - 1] = dp_add(DivPow(s), derive(f, i), fp_neg(1, s.p));
    return out;
}

// sigma(j) and j' of the symplectic index pairing on 1..2r.
struct SymplecticIndexing {
    int r = 0;

    explicit SymplecticIndexing(int even_part) : r(even_part / 2) {
        assert(even_part >= 2 && even_part % 2 == 0);
    }

    fp_t sigma(int j, int p) const {
        assert(1 <= j && j <= 2 * r);
        return j <= r ? 1 : fp_neg(1, p);
    }
    int prime(int j) const {
        assert(1 <= j && j <= 2 * r);
        return j <= r ? j + r : j - r;
    }
};

// D_H(f) = Sum_{j=1}^{n} sigma(j) D_j(f) D_{j'}, n even.
inline Derivation d_H(const DivPow& f) {
    assert(f.shape);
    const Shape& s = *f.shape;
    assert(s.n() % 2 == 0);
    SymplecticIndexing sym(s.n());
    Derivation out(s);
    for (int j = 1; j <= s.n(); ++j) {
        DivPow t = derive(f, j);
        out.comp[sym.prime(j) - 1] =
            dp_add(out.comp[sym.prime(j) - 1], t, sym.sigma(j, s.p));
    }
    return out;
}

// D_K(f) = Sum_j f_j D_j for odd n = 2r+1:
//   f_j = X^{eps_j} D_n(f) + sigma(j') D_{j'}(f)   for j <= 2r
//   f_n = 2f - Sum_{j<=2r} sigma(j) X^{eps_j} f_{j'}
inline Derivation d_K(const DivPow& f) {
    assert(f.shape);
    const Shape& s = *f.shape;
    int n = s.n();
    assert(n % 2 == 1 && n >= 3);
    SymplecticIndexing sym(n - 1);
    Derivation out(s);
    DivPow dnf = derive(f, n);
    std::vector<int> eps(n, 0);
    for (int j = 1; j <= n - 1; ++j) {
        eps.assign(n, 0);
        eps[j - 1] = 1;
        DivPow xj = dp_monomial(s, eps);
        out.comp[j - 1] = dp_add(multiply(xj, dnf), derive(f, sym.prime(j)),
                                 sym.sigma(sym.prime(j), s.p));
    }
    DivPow fn = dp_add(f, f);  // 2f, vanishes for p = 2
    for (int j = 1; j <= n - 1; ++j) {
        eps.assign(n, 0);
        eps[j - 1] = 1;
        DivPow xj = dp_monomial(s, eps);
        fn = dp_add(fn, multiply(xj, out.comp[sym.prime(j) - 1]),
                    fp_neg(sym.sigma(j, s.p), s.p));
    }
    out.comp[n - 1] = fn;
    return out;
}

// Matrix of a linear map A(n,m) -> W(n,m) given per-monomial images;
// columns are images, so kernel(matrix) is the map's kernel.
template <typename F>
Matrix map_matrix_from_monomials(const Shape& s, F&& image_of_monomial) {
    Matrix m(s.p, witt_dim(s), s.dim);
    for (int a = 0; a < s.dim; ++a) {
        Vec col = derivation_to_vec(image_of_monomial(a));
        for (int r = 0; r < witt_dim(s); ++r) {
            fp_t c = col.get(r);
            if (c) m.set(r, a, c);
        }
    }
    return m;
}

}  // namespace cartan
