#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "derivations.hpp"
#include "divided_power.hpp"
#include "lie.hpp"
#include "linalg.hpp"

namespace cartan {

enum class FamilyTag { W, S, H, K };

inline const char* family_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::W: return "W";
        case FamilyTag::S: return "S";
        case FamilyTag::H: return "H";
        case FamilyTag::K: return "K";
    }
    return "?";
}

inline std::optional<FamilyTag> family_from_name(const std::string& s) {
    if (s == "W") return FamilyTag::W;
    if (s == "S") return FamilyTag::S;
    if (s == "H") return FamilyTag::H;
    if (s == "K") return FamilyTag::K;
    return std::nullopt;
}

struct CartanFamily {
    FamilyTag tag = FamilyTag::W;
    int n = 1;
    std::vector<int> m;
    int p = 2;

    bool operator==(const CartanFamily&) const = default;
};

// Data errors throw; contracts inside the builders assert.
inline void check_family(const CartanFamily& f) {
    if (!fp_is_prime(f.p) || f.p >= 16)
        throw std::invalid_argument("family: p must be a prime below 16");
    if (f.n < 1 || int(f.m.size()) != f.n)
        throw std::invalid_argument("family: m must list one exponent per variable");
    for (int mi : f.m)
        if (mi < 1) throw std::invalid_argument("family: exponents must be >= 1");
    switch (f.tag) {
        case FamilyTag::W: break;
        case FamilyTag::S:
            if (f.n < 2) throw std::invalid_argument("family: S needs n >= 2");
            break;
        case FamilyTag::H:
            if (f.n < 2 || f.n % 2 != 0)
                throw std::invalid_argument("family: H needs even n >= 2");
            break;
        case FamilyTag::K:
            if (f.n < 3 || f.n % 2 != 1)
                throw std::invalid_argument("family: K needs odd n >= 3");
            break;
    }
}

inline std::string family_label(const CartanFamily& f) {
    std::string out = family_name(f.tag);
    out += "(";
    out += std::to_string(f.n);
    out += ",(";
    for (int i = 0; i < f.n; ++i) {
        if (i) out += ",";
        out += std::to_string(f.m[i]);
    }
    out += "))";
    return out;
}

inline std::string witt_coordinate_label(const Shape& s, int monomial, int comp) {
    std::vector<int> a = s.decode(monomial);
    std::string out = "X(";
    for (int i = 0; i < s.n(); ++i) {
        if (i) out += ",";
        out += std::to_string(a[i]);
    }
    out += ")D";
    out += std::to_string(comp + 1);
    return out;
}

// Full derivation algebra on the monomial basis X^(a) D_j, flattened
// component-major (index = j * dim A + monomial). Basis brackets expand to
// at most two monomial terms:
//   [X^a D_i, X^b D_j] = (X^a . D_i X^b) D_j - (X^b . D_j X^a) D_i.
inline LieAlgebra build_witt(const Shape& s) {
    int nA = s.dim, n = s.n(), d = n * nA;
    std::vector<std::string> labels;
    labels.reserve(d);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < nA; ++a) labels.push_back(witt_coordinate_label(s, a, j));
    LieAlgebra L(s.p, d, std::move(labels));
    for (int u = 0; u < d; ++u) {
        int iu = u / nA, au = u % nA;
        for (int v = u + 1; v < d; ++v) {
            int iv = v / nA, av = v % nA;
            std::array<std::pair<int, fp_t>, 2> acc{};
            int na = 0;
            auto push = [&](int k, fp_t c) {
                if (c == 0) return;
                for (int t = 0; t < na; ++t)
                    if (acc[t].first == k) {
                        acc[t].second = fp_add(acc[t].second, c, s.p);
                        return;
                    }
                acc[na++] = {k, c};
            };
            if (s.digit(av, iu) >= 1) {
                fp_t c;
                int idx = dp_mul_basis(s, au, av - s.stride[iu], &c);
                if (idx >= 0) push(iv * nA + idx, c);
            }
            if (s.digit(au, iv) >= 1) {
                fp_t c;
                int idx = dp_mul_basis(s, av, au - s.stride[iv], &c);
                if (idx >= 0) push(iu * nA + idx, fp_neg(c, s.p));
            }
            std::vector<std::pair<int, fp_t>> terms;
            for (int t = 0; t < na; ++t)
                if (acc[t].second != 0) terms.push_back(acc[t]);
            if (terms.size() == 2 && terms[0].first > terms[1].first)
                std::swap(terms[0], terms[1]);
            if (!terms.empty()) L.set_bracket(u, v, std::move(terms));
        }
    }
    return L;
}

// Coordinates of the family inside the ambient derivation algebra.
inline Subspace family_span(const CartanFamily& f, const Shape& s,
                            const LieAlgebra& witt) {
    assert(witt.dim() == witt_dim(s) && witt.p() == s.p);
    if (f.tag == FamilyTag::W) return Subspace::full(s.p, witt.dim());
    Subspace seed(s.p, witt.dim());
    if (f.tag == FamilyTag::S) {
        // div(X^a D_j) = X^(a - eps_j); kernel of the matrix is ker(div)
        Matrix dv(s.p, s.dim, witt.dim());
        for (int j = 0; j < s.n(); ++j)
            for (int a = 0; a < s.dim; ++a)
                if (s.digit(a, j) >= 1) dv.set(a - s.stride[j], j * s.dim + a, 1);
        seed = kernel(dv);
    } else {
        for (int a = 0; a < s.dim; ++a) {
            DivPow f_a = dp_monomial(s, a);
            Derivation im = f.tag == FamilyTag::H ? d_H(f_a) : d_K(f_a);
            seed.insert(derivation_to_vec(im));
        }
    }
    LieSubspace sub{&witt, std::move(seed)};
    return derived_subalgebra(witt, sub).space;
}

// A constructed family member. span lives in the coordinates of
// build_witt(shape); algebra carries structure constants on the RREF basis
// of span. Keep the object in place while derived DivPow/Derivation values
// reference its shape.
struct BuiltAlgebra {
    CartanFamily family;
    Shape shape;
    Subspace span;
    LieAlgebra algebra;
};

inline BuiltAlgebra build(const CartanFamily& f) {
    check_family(f);
    Shape s(f.p, f.m);
    LieAlgebra witt = build_witt(s);
    if (f.tag == FamilyTag::W)
        return {f, s, Subspace::full(s.p, witt.dim()), std::move(witt)};
    Subspace span = family_span(f, s, witt);
    LieSubspace sub{&witt, span};
    LieAlgebra alg = restrict_to(witt, sub);
    return {f, std::move(s), std::move(span), std::move(alg)};
}

inline BuiltAlgebra build(FamilyTag tag, std::vector<int> m, int p = 2) {
    return build({tag, int(m.size()), std::move(m), p});
}

// Image of one monomial under the Hamiltonian map, ambient coordinates.
// Spans of these generate the Hamiltonian family; repeated ad of an
// eps-image lowers an exponent by one per step.
inline Vec hamiltonian_image(const Shape& s, int monomial) {
    return derivation_to_vec(d_H(dp_monomial(s, monomial)));
}

// Distinguished spanning set of S(2,m) over GF(2) and the bracket table it
// satisfies. kind 'x': X^((0,i)) D_1; 'y': X^((i,0)) D_2;
// 'z': X^((i+1,j)) D_1 - X^((i,j+1)) D_2.
struct SpecialTerm {
    char kind = 'x';
    int i = 0;
    int j = 0;
    fp_t c = 1;
};

inline Vec special2_vec(const Shape& s, const SpecialTerm& t) {
    assert(s.n() == 2 && s.p == 2);
    int t1 = s.tau[0], t2 = s.tau[1];
    Vec out(s.p, witt_dim(s));
    fp_t c = fp_norm(t.c, s.p);
    if (c == 0) return out;
    if (t.kind == 'x') {
        assert(0 <= t.i && t.i <= t2 - 1);
        out.set(0 * s.dim + s.encode({0, t.i}), c);
    } else if (t.kind == 'y') {
        assert(0 <= t.i && t.i <= t1 - 1);
        out.set(1 * s.dim + s.encode({t.i, 0}), c);
    } else {
        assert(t.kind == 'z');
        assert(0 <= t.i && t.i <= t1 - 1 && 0 <= t.j && t.j <= t2 - 1);
        out.set(0 * s.dim + s.encode({t.i + 1, t.j}), c);
        out.set(1 * s.dim + s.encode({t.i, t.j + 1}), fp_neg(c, s.p));
    }
    return out;
}

inline Vec special2_x(const Shape& s, int i) { return special2_vec(s, {'x', i, 0, 1}); }
inline Vec special2_y(const Shape& s, int i) { return special2_vec(s, {'y', i, 0, 1}); }
inline Vec special2_z(const Shape& s, int i, int j) {
    return special2_vec(s, {'z', i, j, 1});
}

// The full indexed spanning set, x block then y block then z block in row
// major index order. Its size equals the two variable special dimension.
inline std::vector<SpecialTerm> all_special2_terms(const Shape& s) {
    assert(s.n() == 2 && s.p == 2);
    std::vector<SpecialTerm> out;
    for (int i = 0; i <= s.tau[1] - 1; ++i) out.push_back({'x', i, 0, 1});
    for (int i = 0; i <= s.tau[0] - 1; ++i) out.push_back({'y', i, 0, 1});
    for (int i = 0; i <= s.tau[0] - 1; ++i)
        for (int j = 0; j <= s.tau[1] - 1; ++j) out.push_back({'z', i, j, 1});
    return out;
}

inline fp_t special2_gamma(int i, int j, int k, int l, int p) {
    auto sb = [p](long long c, long long a) -> fp_t {
        if (a < 0 || a > c) return 0;
        return binomial_mod_p(c, a, p);
    };
    fp_t left = fp_mul(sb(i + k + 1, i + 1),
                       fp_add(sb(j + l, j), sb(j + l, j - 1), p), p);
    fp_t right = fp_mul(sb(i + k + 1, i),
                        fp_add(sb(j + l, j + 1), sb(j + l, j), p), p);
    return fp_sub(left, right, p);
}

// Tabulated bracket of two special elements, or nullopt when the pair falls
// outside the tabulated index ranges (results that would leave the indexed
// set are not covered). Zero brackets return an empty list.
inline std::optional<std::vector<SpecialTerm>> special2_expected_bracket(
    const Shape& s, const SpecialTerm& A, const SpecialTerm& B) {
    assert(s.n() == 2 && s.p == 2);
    assert(A.c == 1 && B.c == 1);
    int p = s.p;
    int x_max = s.tau[1] - 1;  // largest tabulated x / z second index
    int y_max = s.tau[0] - 1;  // largest tabulated y / z first index
    auto coeff = [p](long long c, long long a) -> fp_t {
        if (a < 0 || a > c) return 0;
        return binomial_mod_p(c, a, p);
    };
    auto one = [](std::vector<SpecialTerm> v) {
        return std::optional<std::vector<SpecialTerm>>(std::move(v));
    };
    if (A.kind > B.kind) {
        auto flipped = special2_expected_bracket(s, B, A);
        if (!flipped) return std::nullopt;
        for (SpecialTerm& t : *flipped) t.c = fp_neg(t.c, p);
        return flipped;
    }
    if (A.kind == 'x' && B.kind == 'x') return one({});
    if (A.kind == 'y' && B.kind == 'y') return one({});
    if (A.kind == 'x' && B.kind == 'y') {
        if (A.i == 0) {
            if (B.i == 0) return one({});
            return one({{'y', B.i - 1, 0, 1}});
        }
        if (B.i == 0) return one({{'x', A.i - 1, 0, fp_neg(1, p)}});
        // tabulated range caps the y index by the x range as well
        if (B.i > x_max) return std::nullopt;
        return one({{'z', B.i - 1, A.i - 1, 1}});
    }
    if (A.kind == 'x' && B.kind == 'z') {
        if (A.i + B.j > x_max) return std::nullopt;
        fp_t c = coeff(A.i + B.j + 1, A.i);
        if (c == 0) return one({});
        if (B.i == 0) return one({{'x', A.i + B.j, 0, c}});
        return one({{'z', B.i - 1, A.i + B.j, c}});
    }
    if (A.kind == 'y' && B.kind == 'z') {
        if (A.i + B.i > y_max) return std::nullopt;
        fp_t c = coeff(A.i + B.i + 1, A.i);
        if (c == 0) return one({});
        if (B.j == 0) return one({{'y', A.i + B.i, 0, c}});
        return one({{'z', A.i + B.i, B.j - 1, c}});
    }
    assert(A.kind == 'z' && B.kind == 'z');
    if (A.i + B.i > y_max || A.j + B.j > x_max) return std::nullopt;
    fp_t g = special2_gamma(A.i, A.j, B.i, B.j, p);
    if (g == 0) return one({});
    return one({{'z', A.i + B.i, A.j + B.j, g}});
}

}  // namespace cartan
