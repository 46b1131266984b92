#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "families.hpp"
#include "gfp.hpp"
#include "lie.hpp"
#include "linalg.hpp"
#include "structure.hpp"

namespace cartan {

// Basis-change invariants. Two isomorphic algebras agree on every field;
// disagreement anywhere soundly rules an isomorphism out.
struct Fingerprint {
    int p = 2;
    int dim = 0;
    std::vector<int> derived_dims;
    std::vector<int> lower_central_dims;
    int center_dim = 0;
    int killing_rank = 0;
    std::vector<int> derived_centralizer_dims;

    bool operator==(const Fingerprint&) const = default;

    std::string to_string() const {
        auto list = [](const std::vector<int>& v) {
            std::string s = "[";
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(v[i]);
            }
            return s + "]";
        };
        return "p=" + std::to_string(p) + " dim=" + std::to_string(dim) +
               " derived=" + list(derived_dims) +
               " lower_central=" + list(lower_central_dims) +
               " center=" + std::to_string(center_dim) +
               " killing_rank=" + std::to_string(killing_rank) +
               " derived_centralizers=" + list(derived_centralizer_dims);
    }
};

// trace(a * b) without forming the product.
inline fp_t product_trace(const Matrix& a, const Matrix& b, int p) {
    fp_t acc = 0;
    for (int k = 0; k < a.rows(); ++k)
        a.row(k).for_each_nonzero([&](int t, fp_t c) {
            acc = fp_add(acc, fp_mul(c, b.get(t, k), p), p);
        });
    return acc;
}

inline Matrix killing_matrix(const LieAlgebra& L) {
    int d = L.dim();
    std::vector<Matrix> ads;
    ads.reserve(d);
    for (int i = 0; i < d; ++i) ads.push_back(L.ad_basis(i));
    Matrix k(L.p(), d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            fp_t t = product_trace(ads[i], ads[j], L.p());
            if (t) {
                k.set(i, j, t);
                k.set(j, i, t);
            }
        }
    return k;
}

inline Fingerprint fingerprint(const LieAlgebra& L) {
    Fingerprint f;
    f.p = L.p();
    f.dim = L.dim();
    std::vector<LieSubspace> der = series(L, SeriesKind::derived, full_subspace(L));
    for (const LieSubspace& s : der) {
        f.derived_dims.push_back(s.dim());
        f.derived_centralizer_dims.push_back(centralizer(L, s).dim());
    }
    for (const LieSubspace& s : series(L, SeriesKind::lower_central, full_subspace(L)))
        f.lower_central_dims.push_back(s.dim());
    f.center_dim = center(L).dim();
    f.killing_rank = rank_of(killing_matrix(L));
    return f;
}

// Conjugation-invariant profile of a single element, used to cut candidate
// pools: ranks of the first three powers of its ad matrix.
struct ElementProfile {
    int rank1 = 0, rank2 = 0, rank3 = 0;
    bool operator==(const ElementProfile&) const = default;
};

inline ElementProfile element_profile(const LieAlgebra& L, const Vec& x) {
    Matrix a1 = L.ad_of(x);
    Matrix a2 = mat_mul(a1, a1);
    Matrix a3 = mat_mul(a2, a1);
    return {rank_of(a1), rank_of(a2), rank_of(a3)};
}

// Partial linear map kept as paired reduced rows: the x parts form an RREF
// basis of the domain span, each carrying its image. Insert rejects
// assignments that contradict linearity or injectivity.
class PartialMap {
public:
    PartialMap(const LieAlgebra& a, const LieAlgebra& b)
        : pa_(&a), pb_(&b), image_span_(b.p(), b.dim()) {}

    int size() const { return int(rows_.size()); }

    // Record x -> y. Returns false exactly when the extended relation cannot
    // be part of an isomorphism (inconsistent image or collapsed rank).
    bool insert(Vec x, Vec y) {
        for (const Row& r : rows_) {
            fp_t c = x.get(r.pivot);
            if (c) {
                x.add_scaled(r.x, fp_neg(c, pa_->p()));
                y.add_scaled(r.y, fp_neg(c, pb_->p()));
            }
        }
        if (x.is_zero()) return y.is_zero();
        int piv = x.first_nonzero();
        fp_t inv = fp_inv(x.get(piv), pa_->p());
        x.scale(inv);
        y.scale(inv);
        if (!image_span_.insert(y)) return false;  // image rank must follow
        for (Row& r : rows_) {
            fp_t c = r.x.get(piv);
            if (c) {
                r.x.add_scaled(x, fp_neg(c, pa_->p()));
                r.y.add_scaled(y, fp_neg(c, pb_->p()));
            }
        }
        Row nr{piv, std::move(x), std::move(y)};
        auto at = std::lower_bound(
            rows_.begin(), rows_.end(), nr,
            [](const Row& l, const Row& r) { return l.pivot < r.pivot; });
        rows_.insert(at, std::move(nr));
        return true;
    }

    // Close the relation under brackets of all mapped pairs. False on
    // contradiction.
    bool saturate() {
        size_t before = 0;
        while (before != rows_.size()) {
            before = rows_.size();
            for (size_t i = 0; i < rows_.size(); ++i)
                for (size_t j = i + 1; j < rows_.size(); ++j) {
                    Vec bx = pa_->bracket(rows_[i].x, rows_[j].x);
                    Vec by = pb_->bracket(rows_[i].y, rows_[j].y);
                    if (!insert(std::move(bx), std::move(by))) return false;
                }
        }
        return true;
    }

    std::optional<Vec> apply(Vec v) const {
        Vec acc(pb_->p(), pb_->dim());
        for (const Row& r : rows_) {
            fp_t c = v.get(r.pivot);
            if (c) {
                v.add_scaled(r.x, fp_neg(c, pa_->p()));
                acc.add_scaled(r.y, c);
            }
        }
        if (!v.is_zero()) return std::nullopt;
        return acc;
    }

private:
    struct Row {
        int pivot;
        Vec x, y;
    };
    const LieAlgebra* pa_;
    const LieAlgebra* pb_;
    Subspace image_span_;
    std::vector<Row> rows_;
};

// Row i holds the image of basis vector e_i. A certificate is accepted only
// if it is invertible and respects every basis bracket.
inline bool verify_certificate(const LieAlgebra& a, const LieAlgebra& b,
                               const Matrix& m) {
    if (a.p() != b.p() || a.dim() != b.dim()) return false;
    if (m.rows() != a.dim() || m.cols() != b.dim()) return false;
    if (!inverse(m).has_value()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) {
            Vec lhs = vec_mat(a.bracket_basis(i, j), m);
            Vec rhs = b.bracket(m.row(i), m.row(j));
            if (lhs != rhs) return false;
        }
    return true;
}

enum class IsoStatus { found, absent, unknown };

inline const char* iso_status_name(IsoStatus s) {
    switch (s) {
        case IsoStatus::found: return "found";
        case IsoStatus::absent: return "absent";
        case IsoStatus::unknown: return "unknown";
    }
    return "?";
}

struct IsoOptions {
    uint64_t seed = 0;
    uint64_t budget = 5'000'000;  // candidate insertions tried
};

struct IsoResult {
    IsoStatus status = IsoStatus::unknown;
    Matrix certificate;   // valid when status == found
    uint64_t nodes = 0;   // candidates tried
};

namespace detail {

struct IsoSearch {
    const LieAlgebra& a;
    const LieAlgebra& b;
    const std::vector<Vec>& gens;
    const std::vector<std::vector<Vec>>& pools;
    const std::vector<int>& order;
    uint64_t budget;
    uint64_t nodes = 0;
    bool out_of_budget = false;
    std::optional<Matrix> certificate;

    bool dfs(size_t k, const PartialMap& pm) {
        if (k == order.size()) {
            Matrix m(b.p(), a.dim(), b.dim());
            for (int i = 0; i < a.dim(); ++i) {
                Vec e(a.p(), a.dim());
                e.set(i, 1);
                std::optional<Vec> img = pm.apply(e);
                if (!img) return false;  // generators failed to generate
                m.set_row(i, *img);
            }
            if (!verify_certificate(a, b, m)) return false;
            certificate = std::move(m);
            return true;
        }
        const Vec& g = gens[order[k]];
        for (const Vec& y : pools[order[k]]) {
            if (++nodes > budget) {
                out_of_budget = true;
                return false;
            }
            PartialMap next = pm;
            if (!next.insert(g, y)) continue;
            if (!next.saturate()) continue;
            if (dfs(k + 1, next)) return true;
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace detail

// Search for an isomorphism a -> b. Exhaustive over profile-matched
// candidate images of a small generating set when the target is enumerable
// (p^dim small): absence is then a proved verdict. Larger targets draw
// seeded random candidate pools and can only answer found or unknown.
inline IsoResult find_isomorphism(const LieAlgebra& a, const LieAlgebra& b,
                                  IsoOptions opt = {}) {
    IsoResult res;
    if (a.p() != b.p() || a.dim() != b.dim()) {
        res.status = IsoStatus::absent;
        return res;
    }
    if (a.dim() == 0) {
        res.status = IsoStatus::found;
        res.certificate = Matrix(a.p(), 0, 0);
        return res;
    }
    if (fingerprint(a) != fingerprint(b)) {
        res.status = IsoStatus::absent;
        return res;
    }

    int d = a.dim(), p = a.p();
    GeneratingSet gs = generating_set(a, opt.seed);
    std::vector<ElementProfile> gen_profiles;
    gen_profiles.reserve(gs.vectors.size());
    for (const Vec& g : gs.vectors) gen_profiles.push_back(element_profile(a, g));

    bool exhaustive = subspace_size(p, d) <= (1 << 20);
    std::vector<std::vector<Vec>> pools(gs.vectors.size());
    if (exhaustive) {
        for_each_nonzero_element(Subspace::full(p, d), [&](const Vec& y) {
            ElementProfile pr = element_profile(b, y);
            for (size_t t = 0; t < pools.size(); ++t)
                if (pr == gen_profiles[t]) pools[t].push_back(y);
            return true;
        });
    } else {
        std::mt19937_64 rng(opt.seed ^ 0xa5a5a5a5deadbeefull);
        Subspace seen(p, d);
        const size_t cap = 2048;
        for (int attempt = 0; attempt < 1 << 16; ++attempt) {
            Vec y(p, d);
            while (y.is_zero())
                for (int i = 0; i < d; ++i) y.set(i, fp_t(rng() % p));
            ElementProfile pr = element_profile(b, y);
            bool full = true;
            for (size_t t = 0; t < pools.size(); ++t) {
                if (pr == gen_profiles[t] && pools[t].size() < cap)
                    pools[t].push_back(y);
                if (pools[t].size() < cap) full = false;
            }
            if (full) break;
        }
    }

    for (const std::vector<Vec>& pool : pools)
        if (pool.empty()) {
            res.status = exhaustive ? IsoStatus::absent : IsoStatus::unknown;
            return res;
        }

    std::vector<int> order(pools.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
        return pools[l].size() < pools[r].size();
    });

    detail::IsoSearch search{a, b, gs.vectors, pools, order, opt.budget};
    bool ok = search.dfs(0, PartialMap(a, b));
    res.nodes = search.nodes;
    if (ok) {
        res.status = IsoStatus::found;
        res.certificate = std::move(*search.certificate);
    } else if (search.out_of_budget || !exhaustive) {
        res.status = IsoStatus::unknown;
    } else {
        res.status = IsoStatus::absent;
    }
    return res;
}

// The distinguished surjection from the derived two variable special
// algebra with m = (1, m2) onto the derived rank one derivation algebra:
// the x line dies, y_0 maps to the first monomial element and z_{0,i} to
// the (i+1)-st. Rows of map are aligned to source.algebra's basis.
struct SpecialWittMap {
    BuiltAlgebra special;   // S(2,(1,m2))
    LieAlgebra source;      // its derived subalgebra
    Matrix source_basis;    // rows: source basis in the ambient coordinates
    BuiltAlgebra witt;      // W(1,(m2))
    LieAlgebra target;      // derived subalgebra of the rank one algebra
    Matrix target_span;     // rows: target basis in the rank one coordinates
    Matrix map;
};

inline SpecialWittMap phi_special_witt(int m2) {
    assert(m2 >= 1);
    SpecialWittMap out{build(FamilyTag::S, {1, m2}),
                       LieAlgebra(),
                       Matrix(),
                       build(FamilyTag::W, {m2}),
                       LieAlgebra(),
                       Matrix(),
                       Matrix()};
    const Shape& s2 = out.special.shape;
    int t2 = s2.tau[1];

    LieSubspace sd = derived_subalgebra(out.special.algebra,
                                        full_subspace(out.special.algebra));
    out.source = restrict_to(out.special.algebra, sd);

    LieSubspace wd = derived_subalgebra(out.witt.algebra,
                                        full_subspace(out.witt.algebra));
    out.target = restrict_to(out.witt.algebra, wd);
    out.target_span = wd.space.basis_matrix();

    // special spanning set, ambient coordinates; term t maps to phi_images[t]
    std::vector<SpecialTerm> terms = all_special2_terms(s2);
    Matrix span_rows(2, int(terms.size()), witt_dim(s2));
    std::vector<Vec> phi_images(terms.size(), Vec(2, out.target.dim()));
    for (size_t t = 0; t < terms.size(); ++t) {
        span_rows.set_row(int(t), special2_vec(s2, terms[t]));
        const SpecialTerm& st = terms[t];
        int target_monomial = -1;
        if (st.kind == 'y') target_monomial = 0;          // y_0 -> first element
        if (st.kind == 'z') target_monomial = st.j + 1;   // z_{0,j} -> next ones
        if (target_monomial >= 0 && target_monomial <= t2 - 1) {
            Vec amb(2, out.witt.algebra.dim());
            amb.set(target_monomial, 1);
            phi_images[t] = wd.space.coordinates(amb);
        }
    }

    Matrix span_cols = span_rows.transpose();
    Matrix src_rows(2, out.source.dim(), witt_dim(s2));
    Matrix phi(2, out.source.dim(), out.target.dim());
    for (int i = 0; i < out.source.dim(); ++i) {
        Vec amb = vec_mat(sd.space.basis_row(i), out.special.span.basis_matrix());
        src_rows.set_row(i, amb);
        std::optional<Vec> lambda = solve(span_cols, amb);
        assert(lambda.has_value());
        Vec img(2, out.target.dim());
        lambda->for_each_nonzero(
            [&](int t, fp_t c) { img.add_scaled(phi_images[t], c); });
        phi.set_row(i, img);
    }
    out.source_basis = std::move(src_rows);
    out.map = std::move(phi);
    return out;
}

// Homomorphism check for a rectangular map: rows of m are images of the
// source basis.
inline bool verify_homomorphism(const LieAlgebra& a, const LieAlgebra& b,
                                const Matrix& m) {
    if (m.rows() != a.dim() || m.cols() != b.dim() || a.p() != b.p()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) {
            Vec lhs = vec_mat(a.bracket_basis(i, j), m);
            Vec rhs = b.bracket(m.row(i), m.row(j));
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace cartan
