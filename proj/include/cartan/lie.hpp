#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfp.hpp"
#include "linalg.hpp"

namespace cartan {

// Finite-dimensional Lie algebra over GF(p) as sparse structure constants.
// Only pairs i < j are stored; [e_i,e_i] = 0 and the i > j half follow from
// the alternating property, so those are structural, not data.
class LieAlgebra {
public:
    LieAlgebra() : p_(2), dim_(0) {}
    LieAlgebra(int p, int dim, std::vector<std::string> labels = {})
        : p_(p), dim_(dim), labels_(std::move(labels)),
          brackets_(size_t(dim) * (dim - 1) / 2) {
        assert(fp_is_prime(p) && p < 16 && dim >= 0);
        if (labels_.empty()) {
            labels_.reserve(dim);
            for (int i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i));
        }
        assert(int(labels_.size()) == dim);
    }

    int p() const { return p_; }
    int dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) {
        assert(int(l.size()) == dim_);
        labels_ = std::move(l);
    }

    size_t pair_index(int i, int j) const {
        assert(0 <= i && i < j && j < dim_);
        return size_t(i) * dim_ - size_t(i) * (i + 1) / 2 + (j - i - 1);
    }

    // terms must be sorted by k with nonzero coefficients.
    void set_bracket(int i, int j, std::vector<std::pair<int, fp_t>> terms) {
        for (size_t t = 0; t < terms.size(); ++t) {
            assert(0 <= terms[t].first && terms[t].first < dim_);
            assert(terms[t].second % p_ != 0);
            if (t) assert(terms[t - 1].first < terms[t].first);
        }
        brackets_[pair_index(i, j)] = std::move(terms);
    }

    const std::vector<std::pair<int, fp_t>>& bracket_terms(int i, int j) const {
        return brackets_[pair_index(i, j)];
    }

    // [e_i, e_j] for arbitrary i, j.
    Vec bracket_basis(int i, int j) const {
        Vec out(p_, dim_);
        if (i == j) return out;
        bool flip = i > j;
        if (flip) std::swap(i, j);
        for (const auto& [k, c] : brackets_[pair_index(i, j)])
            out.set(k, flip ? fp_neg(c, p_) : c);
        return out;
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        assert(x.p() == p_ && y.p() == p_);
        assert(x.size() == dim_ && y.size() == dim_);
        Vec out(p_, dim_);
        x.for_each_nonzero([&](int i, fp_t ci) {
            y.for_each_nonzero([&](int j, fp_t cj) {
                if (i == j) return;
                fp_t f = fp_mul(ci, cj, p_);
                bool flip = i > j;
                const auto& terms =
                    brackets_[flip ? pair_index(j, i) : pair_index(i, j)];
                if (flip) f = fp_neg(f, p_);
                for (const auto& [k, c] : terms)
                    out.set(k, fp_add(out.get(k), fp_mul(f, c, p_), p_));
            });
        });
        return out;
    }

    // Row-image matrix of ad(x): row j holds [x, e_j]; apply with vec_mat.
    Matrix ad_of(const Vec& x) const {
        Matrix m(p_, dim_, dim_);
        for (int j = 0; j < dim_; ++j) {
            Vec e(p_, dim_);
            e.set(j, 1);
            m.set_row(j, bracket(x, e));
        }
        return m;
    }

    Matrix ad_basis(int i) const {
        Vec e(p_, dim_);
        e.set(i, 1);
        return ad_of(e);
    }

    bool is_abelian() const {
        for (const auto& terms : brackets_)
            if (!terms.empty()) return false;
        return true;
    }

    bool operator==(const LieAlgebra& o) const {
        return p_ == o.p_ && dim_ == o.dim_ && labels_ == o.labels_ &&
               brackets_ == o.brackets_;
    }

private:
    int p_, dim_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<int, fp_t>>> brackets_;
};

// Subspace of a Lie algebra's underlying space, tied to its parent.
struct LieSubspace {
    const LieAlgebra* parent = nullptr;
    Subspace space;

    int dim() const { return space.dim(); }
};

inline LieSubspace zero_subspace(const LieAlgebra& L) {
    return {&L, Subspace(L.p(), L.dim())};
}

inline LieSubspace full_subspace(const LieAlgebra& L) {
    return {&L, Subspace::full(L.p(), L.dim())};
}

inline LieSubspace subspace_from(const LieAlgebra& L, const std::vector<Vec>& gens) {
    LieSubspace s = zero_subspace(L);
    for (const Vec& v : gens) s.space.insert(v);
    return s;
}

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Alternating is structural; Jacobi is checked on every basis triple.
inline ValidationReport validate(const LieAlgebra& L) {
    ValidationReport rep;
    int d = L.dim();
    for (int i = 0; i < d && int(rep.violations.size()) < 16; ++i) {
        Vec ei(L.p(), d);
        ei.set(i, 1);
        for (int j = i + 1; j < d && int(rep.violations.size()) < 16; ++j) {
            Vec bij = L.bracket_basis(i, j);
            for (int k = j + 1; k < d; ++k) {
                Vec ek(L.p(), d);
                ek.set(k, 1);
                Vec sum = L.bracket(bij, ek);
                sum.add_scaled(L.bracket(L.bracket_basis(j, k), ei), 1);
                sum.add_scaled(L.bracket(L.bracket_basis(k, i), [&] {
                    Vec ej(L.p(), d);
                    ej.set(j, 1);
                    return ej;
                }()), 1);
                if (!sum.is_zero()) {
                    rep.violations.push_back("jacobi fails at triple (" +
                                             std::to_string(i) + "," +
                                             std::to_string(j) + "," +
                                             std::to_string(k) + ")");
                    if (int(rep.violations.size()) >= 16) break;
                }
            }
        }
    }
    return rep;
}

// Span of {[u, v] : u in basis(U), v in basis(V)}. One ad matrix per basis
// row of U so each bracket is a word-parallel row combination.
inline LieSubspace product_space(const LieAlgebra& L, const LieSubspace& U,
                                 const LieSubspace& V) {
    assert(U.parent == &L && V.parent == &L);
    LieSubspace out = zero_subspace(L);
    for (int i = 0; i < U.space.dim(); ++i) {
        Matrix ad_u = L.ad_of(U.space.basis_row(i));
        for (int j = 0; j < V.space.dim(); ++j)
            out.space.insert(vec_mat(V.space.basis_row(j), ad_u));
    }
    return out;
}

enum class SeriesKind { derived, lower_central };

// Chain X_0 = start, then X_{k+1} = [X_k,X_k] or [X_0,X_k], until stable.
inline std::vector<LieSubspace> series(const LieAlgebra& L, SeriesKind kind,
                                       const LieSubspace& start) {
    std::vector<LieSubspace> chain{start};
    while (true) {
        const LieSubspace& last = chain.back();
        LieSubspace next = kind == SeriesKind::derived
                               ? product_space(L, last, last)
                               : product_space(L, chain.front(), last);
        if (next.space == last.space) break;
        chain.push_back(std::move(next));
        if (chain.back().space.dim() == 0) break;
    }
    return chain;
}

inline LieSubspace derived_subalgebra(const LieAlgebra& L, const LieSubspace& U) {
    return product_space(L, U, U);
}

// Smallest ideal containing the seeds: spin by bracketing with all basis
// vectors of L, breadth-first in index order.
inline LieSubspace ideal_closure(const LieAlgebra& L, const std::vector<Vec>& seeds) {
    LieSubspace out = zero_subspace(L);
    for (const Vec& s : seeds) out.space.insert(s);
    // re-spin current basis rows until no growth
    bool grew = true;
    while (grew) {
        grew = false;
        for (int r = 0; r < out.space.dim(); ++r) {
            Vec v = out.space.basis_row(r);
            for (int t = 0; t < L.dim(); ++t) {
                Vec e(L.p(), L.dim());
                e.set(t, 1);
                if (out.space.insert(L.bracket(v, e))) grew = true;
            }
        }
    }
    return out;
}

// Smallest subalgebra containing the seeds: closed under brackets among its
// own members only, unlike ideal_closure.
inline LieSubspace subalgebra_closure(const LieAlgebra& L,
                                      const std::vector<Vec>& seeds) {
    LieSubspace out = zero_subspace(L);
    for (const Vec& s : seeds) out.space.insert(s);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int i = 0; i < out.space.dim(); ++i) {
            Matrix ad_i = L.ad_of(out.space.basis_row(i));
            for (int j = 0; j < out.space.dim(); ++j)
                if (out.space.insert(vec_mat(out.space.basis_row(j), ad_i)))
                    grew = true;
        }
    }
    return out;
}

// {x : [x, u] = 0 for all u in U}; centralizer of the full space is the center.
inline LieSubspace centralizer(const LieAlgebra& L, const LieSubspace& U) {
    assert(U.parent == &L);
    int d = L.dim(), nb = U.space.dim();
    Matrix stacked(L.p(), d * nb, d);
    for (int b = 0; b < nb; ++b) {
        // column j of block b is [e_j, u_b]
        for (int j = 0; j < d; ++j) {
            Vec e(L.p(), d);
            e.set(j, 1);
            Vec br = L.bracket(e, U.space.basis_row(b));
            br.for_each_nonzero(
                [&](int r, fp_t c) { stacked.set(b * d + r, j, c); });
        }
    }
    LieSubspace out = zero_subspace(L);
    Subspace k = kernel(stacked);
    for (int i = 0; i < k.dim(); ++i) out.space.insert(k.basis_row(i));
    return out;
}

inline LieSubspace center(const LieAlgebra& L) {
    return centralizer(L, full_subspace(L));
}

inline bool is_ideal(const LieAlgebra& L, const LieSubspace& I, Vec* witness = nullptr) {
    for (int b = 0; b < I.space.dim(); ++b)
        for (int j = 0; j < L.dim(); ++j) {
            Vec e(L.p(), L.dim());
            e.set(j, 1);
            Vec br = L.bracket(e, I.space.basis_row(b));
            if (!I.space.contains(br)) {
                if (witness) *witness = br;
                return false;
            }
        }
    return true;
}

struct QuotientResult {
    LieAlgebra algebra;
    Matrix projection;                // (dim L/I) x (dim L), acts by mat_vec
    std::vector<int> complement;      // ambient indices of the chosen basis
};

// Quotient by an ideal on the complement spanned by non-pivot coordinates.
inline QuotientResult quotient(const LieAlgebra& L, const LieSubspace& I) {
    assert(I.parent == &L);
    Vec witness;
    if (!is_ideal(L, I, &witness))
        throw std::invalid_argument("quotient: subspace is not an ideal");
    int d = L.dim(), q = d - I.space.dim();
    std::vector<bool> is_pivot(d, false);
    for (int c : I.space.pivots()) is_pivot[c] = true;
    std::vector<int> comp;
    for (int c = 0; c < d; ++c)
        if (!is_pivot[c]) comp.push_back(c);
    assert(int(comp.size()) == q);

    Matrix proj(L.p(), q, d);
    for (int j = 0; j < d; ++j) {
        Vec e(L.p(), d);
        e.set(j, 1);
        Vec r = I.space.reduce(e);
        for (int t = 0; t < q; ++t) {
            fp_t c = r.get(comp[t]);
            if (c) proj.set(t, j, c);
        }
    }

    std::vector<std::string> labels;
    labels.reserve(q);
    for (int t = 0; t < q; ++t) labels.push_back(L.labels()[comp[t]]);
    LieAlgebra Q(L.p(), q, std::move(labels));
    for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b) {
            Vec br = I.space.reduce(L.bracket_basis(comp[a], comp[b]));
            std::vector<std::pair<int, fp_t>> terms;
            for (int t = 0; t < q; ++t) {
                fp_t c = br.get(comp[t]);
                if (c) terms.emplace_back(t, c);
            }
            Q.set_bracket(a, b, std::move(terms));
        }
    return {std::move(Q), std::move(proj), std::move(comp)};
}

// Structure constants of a bracket-closed subspace w.r.t. its RREF basis.
inline LieAlgebra restrict_to(const LieAlgebra& L, const LieSubspace& U,
                              std::vector<std::string> labels = {}) {
    assert(U.parent == &L);
    int d = U.space.dim();
    if (labels.empty()) {
        labels.reserve(d);
        for (int i = 0; i < d; ++i)
            labels.push_back("b" + std::to_string(i) + ":" +
                             L.labels()[U.space.pivots()[i]]);
    }
    LieAlgebra R(L.p(), d, std::move(labels));
    for (int i = 0; i < d; ++i) {
        Matrix ad_i = L.ad_of(U.space.basis_row(i));
        for (int j = i + 1; j < d; ++j) {
            // vec_mat against the row-image ad gives [u_i, u_j] directly
            Vec br = vec_mat(U.space.basis_row(j), ad_i);
            if (!U.space.contains(br))
                throw std::invalid_argument(
                    "restrict: subspace not bracket-closed at pair (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
            Vec coords = U.space.coordinates(br);
            std::vector<std::pair<int, fp_t>> terms;
            coords.for_each_nonzero(
                [&](int k, fp_t c) { terms.emplace_back(k, c); });
            R.set_bracket(i, j, std::move(terms));
        }
    }
    return R;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    int n = a.rows();
    Matrix aug(a.p(), n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            fp_t v = a.get(r, c);
            if (v) aug.set(r, c, v);
        }
        aug.set(r, n + r, 1);
    }
    RrefResult rr = rref(std::move(aug));
    if (rr.rank < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(a.p(), n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            fp_t v = rr.mat.get(r, n + c);
            if (v) inv.set(r, c, v);
        }
    return inv;
}

// Conjugated copy: row i of A holds the new basis vector f_i in old
// coordinates. Throws when A is singular.
inline LieAlgebra change_basis(const LieAlgebra& L, const Matrix& A) {
    assert(A.p() == L.p() && A.rows() == L.dim() && A.cols() == L.dim());
    auto inv = inverse(A);
    if (!inv) throw std::invalid_argument("change_basis: singular matrix");
    LieAlgebra out(L.p(), L.dim());
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j) {
            Vec w = L.bracket(A.row(i), A.row(j));
            Vec coords = vec_mat(w, *inv);
            std::vector<std::pair<int, fp_t>> terms;
            coords.for_each_nonzero(
                [&](int k, fp_t c) { terms.emplace_back(k, c); });
            out.set_bracket(i, j, std::move(terms));
        }
    return out;
}

}  // namespace cartan
