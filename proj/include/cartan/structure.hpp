#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfp.hpp"
#include "lie.hpp"
#include "linalg.hpp"

namespace cartan {

// Modules are given by operator matrices in row-image form (row j = image of
// e_j, applied with vec_mat). For a Lie algebra acting on itself these are
// the ad matrices of a generating set: a subspace invariant under the
// generators is invariant under the whole algebra.

inline Vec apply_op(const Matrix& g, const Vec& v) { return vec_mat(v, g); }

// Smallest invariant subspace containing v.
inline Subspace spin(const std::vector<Matrix>& gens, const Vec& v) {
    Subspace s(v.p(), v.size());
    std::vector<Vec> queue;
    if (s.insert(v)) queue.push_back(v);
    size_t head = 0;
    while (head < queue.size()) {
        Vec x = queue[head++];
        for (const Matrix& g : gens) {
            Vec w = apply_op(g, x);
            if (s.insert(w)) queue.push_back(w);
        }
    }
    return s;
}

// Random element of the enveloping algebra: a few short words in the
// generators with random coefficients.
inline Matrix random_enveloping_element(const std::vector<Matrix>& gens, int p,
                                        int dim, std::mt19937_64& rng) {
    Matrix acc(p, dim, dim);
    if (gens.empty()) return acc;
    for (int w = 0; w < 4; ++w) {
        int len = 1 + int(rng() % 3);
        Matrix word = gens[rng() % gens.size()];
        for (int t = 1; t < len; ++t) word = mat_mul(word, gens[rng() % gens.size()]);
        fp_t c = fp_t(rng() % p);
        if (c) acc = mat_add_scaled(acc, word, c);
    }
    return acc;
}

// Visit every nonzero vector of a small subspace (p^dim combinations).
template <typename F>
void for_each_nonzero_element(const Subspace& s, F&& f) {
    int d = s.dim(), p = s.p();
    std::vector<int> digits(d, 0);
    while (true) {
        int i = 0;
        while (i < d && digits[i] == p - 1) digits[i++] = 0;
        if (i == d) break;
        ++digits[i];
        Vec v(p, s.ambient_dim());
        for (int t = 0; t < d; ++t)
            if (digits[t]) v.add_scaled(s.basis_row(t), digits[t]);
        if (!f(v)) return;
    }
}

inline long long subspace_size(int p, int dim) {
    long long n = 1;
    for (int i = 0; i < dim; ++i) {
        n *= p;
        if (n > (1 << 20)) return n;
    }
    return n;
}

enum class ModuleVerdict { submodule, irreducible, unknown };

struct SubmoduleSearch {
    ModuleVerdict verdict = ModuleVerdict::unknown;
    Subspace submodule;  // proper nonzero invariant subspace when found
};

// Randomized irreducibility test. A singular enveloping element t with small
// nullity decides the module: if some kernel vector spins to a proper
// subspace that subspace is invariant; if all kernel vectors spin full and a
// dual kernel vector spins the transposed module full, the module is
// irreducible; a proper dual spin yields an invariant annihilator.
inline SubmoduleSearch find_proper_submodule(const std::vector<Matrix>& gens,
                                             int p, int dim, uint64_t seed = 0,
                                             int budget = 64) {
    if (dim <= 1) return {ModuleVerdict::irreducible, Subspace(p, dim)};
    if (gens.empty()) {
        Vec e0(p, dim);
        e0.set(0, 1);
        Subspace s(p, dim);
        s.insert(e0);
        return {ModuleVerdict::submodule, std::move(s)};
    }
    std::mt19937_64 rng(seed);
    std::vector<Matrix> gens_t;
    gens_t.reserve(gens.size());
    for (const Matrix& g : gens) gens_t.push_back(g.transpose());
    for (int trial = 0; trial < budget; ++trial) {
        Matrix t = random_enveloping_element(gens, p, dim, rng);
        Subspace ker = kernel(t.transpose());  // row-action kernel
        if (ker.dim() == 0 || subspace_size(p, ker.dim()) > 512) continue;
        SubmoduleSearch found;
        for_each_nonzero_element(ker, [&](const Vec& v) {
            Subspace s = spin(gens, v);
            if (s.dim() < dim) {
                found = {ModuleVerdict::submodule, std::move(s)};
                return false;
            }
            return true;
        });
        if (found.verdict == ModuleVerdict::submodule) return found;
        Subspace ker_dual = kernel(t);  // kernel of the transposed action
        assert(ker_dual.dim() == ker.dim());
        Subspace dual_spin = spin(gens_t, ker_dual.basis_row(0));
        if (dual_spin.dim() < dim) {
            Subspace ann = kernel(dual_spin.basis_matrix());
            assert(ann.dim() > 0 && ann.dim() < dim);
            return {ModuleVerdict::submodule, std::move(ann)};
        }
        return {ModuleVerdict::irreducible, Subspace(p, dim)};
    }
    return {ModuleVerdict::unknown, Subspace(p, dim)};
}

struct ModuleFactor {
    std::vector<Matrix> gens;  // aligned with the generator list they came from
    int dim = 0;
};

// Composition factors, by repeated splitting. Throws when the randomized
// search exhausts its budget without a verdict.
inline std::vector<ModuleFactor> chop(const std::vector<Matrix>& gens, int p,
                                      int dim, uint64_t seed = 0,
                                      int budget = 64) {
    if (dim == 0) return {};
    SubmoduleSearch sr = find_proper_submodule(gens, p, dim, seed, budget);
    if (sr.verdict == ModuleVerdict::unknown)
        throw std::runtime_error("chop: submodule search budget exhausted");
    if (sr.verdict == ModuleVerdict::irreducible) return {{gens, dim}};

    const Subspace& sub = sr.submodule;
    int d = sub.dim();
    std::vector<Matrix> gens_sub;
    for (const Matrix& g : gens) {
        Matrix r(p, d, d);
        for (int b = 0; b < d; ++b)
            r.set_row(b, sub.coordinates(apply_op(g, sub.basis_row(b))));
        gens_sub.push_back(std::move(r));
    }

    std::vector<bool> is_pivot(dim, false);
    for (int c : sub.pivots()) is_pivot[c] = true;
    std::vector<int> comp;
    for (int c = 0; c < dim; ++c)
        if (!is_pivot[c]) comp.push_back(c);
    int qd = int(comp.size());
    std::vector<Matrix> gens_q;
    for (const Matrix& g : gens) {
        Matrix r(p, qd, qd);
        for (int t = 0; t < qd; ++t) {
            Vec e(p, dim);
            e.set(comp[t], 1);
            Vec img = sub.reduce(apply_op(g, e));
            Vec out(p, qd);
            for (int c = 0; c < qd; ++c) {
                fp_t v = img.get(comp[c]);
                if (v) out.set(c, v);
            }
            r.set_row(t, out);
        }
        gens_q.push_back(std::move(r));
    }

    std::vector<ModuleFactor> out = chop(gens_sub, p, d, seed, budget);
    std::vector<ModuleFactor> rest = chop(gens_q, p, qd, seed, budget);
    out.insert(out.end(), std::make_move_iterator(rest.begin()),
               std::make_move_iterator(rest.end()));
    return out;
}

// Solutions X (factor -> module, rows = images) of Gf X = X Gm for every
// aligned generator pair, flattened to vectors of length fd * dim.
inline Subspace hom_space(const std::vector<Matrix>& gens_m, int dim,
                          const std::vector<Matrix>& gens_f, int fd, int p) {
    assert(gens_m.size() == gens_f.size());
    int nu = fd * dim;
    Matrix eqs(p, int(gens_m.size()) * nu, nu);
    int row = 0;
    for (size_t g = 0; g < gens_m.size(); ++g) {
        const Matrix& gf = gens_f[g];
        Matrix gm_t = gens_m[g].transpose();
        for (int r = 0; r < fd; ++r)
            for (int c = 0; c < dim; ++c) {
                Vec eq(p, nu);
                gf.row(r).for_each_nonzero([&](int k, fp_t v) {
                    eq.set(k * dim + c, fp_add(eq.get(k * dim + c), v, p));
                });
                gm_t.row(c).for_each_nonzero([&](int k, fp_t v) {
                    int idx = r * dim + k;
                    eq.set(idx, fp_sub(eq.get(idx), v, p));
                });
                eqs.set_row(row++, eq);
            }
    }
    return kernel(eqs);
}

// Minimal invariant subspaces: images of nonzero homs from each composition
// factor. The enumeration visits at most cap hom-space elements per factor;
// desk-scale hom spaces stay far below the cap.
inline std::vector<Subspace> minimal_submodules(const std::vector<Matrix>& gens,
                                                int p, int dim,
                                                uint64_t seed = 0,
                                                int cap = 512) {
    std::vector<Subspace> found;
    if (dim == 0) return found;
    std::vector<ModuleFactor> factors = chop(gens, p, dim, seed);
    auto push_unique = [&](Subspace s) {
        for (const Subspace& t : found)
            if (t == s) return;
        found.push_back(std::move(s));
    };
    for (const ModuleFactor& f : factors) {
        if (f.dim == dim) {
            // the module itself is irreducible
            push_unique(Subspace::full(p, dim));
            continue;
        }
        Subspace homs = hom_space(gens, dim, f.gens, f.dim, p);
        int count = 0;
        for_each_nonzero_element(homs, [&](const Vec& x) {
            if (++count > cap) return false;
            Subspace image(p, dim);
            for (int r = 0; r < f.dim; ++r) {
                Vec rowv(p, dim);
                for (int c = 0; c < dim; ++c) {
                    fp_t v = x.get(r * dim + c);
                    if (v) rowv.set(c, v);
                }
                image.insert(rowv);
            }
            if (image.dim() > 0) push_unique(std::move(image));
            return true;
        });
    }
    return found;
}

// Small generating set of the algebra: homogeneous single basis vectors
// rarely generate graded algebras, so draw random dense vectors, growing the
// draw count until the subalgebra closure fills the algebra.
struct GeneratingSet {
    std::vector<Vec> vectors;
    std::vector<Matrix> ads;
};

inline GeneratingSet generating_set(const LieAlgebra& L, uint64_t seed = 0) {
    GeneratingSet out;
    int d = L.dim();
    if (d == 0) return out;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int k = 1; k <= 4; ++k) {
        for (int attempt = 0; attempt < 40; ++attempt) {
            std::vector<Vec> draw;
            for (int t = 0; t < k; ++t) {
                Vec v(L.p(), d);
                while (v.is_zero())
                    for (int i = 0; i < d; ++i) v.set(i, fp_t(rng() % L.p()));
                draw.push_back(std::move(v));
            }
            if (subalgebra_closure(L, draw).dim() == d) {
                out.vectors = std::move(draw);
                for (const Vec& v : out.vectors) out.ads.push_back(L.ad_of(v));
                return out;
            }
        }
    }
    // abelian or stubborn: fall back to the full basis
    for (int i = 0; i < d; ++i) {
        Vec e(L.p(), d);
        e.set(i, 1);
        out.vectors.push_back(e);
        out.ads.push_back(L.ad_basis(i));
    }
    return out;
}

// Minimal ideals are the minimal submodules of the adjoint module.
inline std::vector<LieSubspace> minimal_ideals(const LieAlgebra& L,
                                               uint64_t seed = 0) {
    std::vector<LieSubspace> out;
    GeneratingSet gs = generating_set(L, seed);
    for (Subspace& s : minimal_submodules(gs.ads, L.p(), L.dim(), seed))
        out.push_back({&L, std::move(s)});
    return out;
}

inline bool subspace_is_abelian(const LieAlgebra& L, const Subspace& s) {
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i + 1; j < s.dim(); ++j)
            if (!L.bracket(s.basis_row(i), s.basis_row(j)).is_zero()) return false;
    return true;
}

// Largest solvable ideal. Recursion: a nonzero radical forces an abelian
// minimal ideal (or a central line); quotient by it and pull the smaller
// radical back through the projection complement.
inline LieSubspace solvable_radical(const LieAlgebra& L, uint64_t seed = 0) {
    int d = L.dim();
    LieSubspace R = zero_subspace(L);
    if (d == 0) return R;
    LieSubspace A = zero_subspace(L);
    LieSubspace c = center(L);
    if (c.dim() > 0) {
        A.space.insert(c.space.basis_row(0));
    } else {
        for (LieSubspace& s : minimal_ideals(L, seed))
            if (subspace_is_abelian(L, s.space)) {
                A = std::move(s);
                break;
            }
        if (A.dim() == 0) return R;  // no abelian ideal at all: radical zero
    }
    QuotientResult q = quotient(L, A);
    LieSubspace rq = solvable_radical(q.algebra, seed);
    for (int i = 0; i < A.space.dim(); ++i) R.space.insert(A.space.basis_row(i));
    for (int i = 0; i < rq.space.dim(); ++i) {
        Vec lift(L.p(), d);
        rq.space.basis_row(i).for_each_nonzero(
            [&](int t, fp_t v) { lift.set(q.complement[t], v); });
        R.space.insert(lift);
    }
    return R;
}

inline bool is_solvable(const LieAlgebra& L) {
    return series(L, SeriesKind::derived, full_subspace(L)).back().dim() == 0;
}

inline bool is_nilpotent(const LieAlgebra& L) {
    return series(L, SeriesKind::lower_central, full_subspace(L)).back().dim() == 0;
}

enum class Verdict { yes, no, unknown };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

// Simple = nonabelian with no proper nonzero ideal; the randomized search
// may come back empty-handed, which reports unknown rather than a verdict.
inline Verdict is_simple(const LieAlgebra& L, uint64_t seed = 0,
                         int budget = 200) {
    if (L.dim() == 0 || L.is_abelian()) return Verdict::no;
    GeneratingSet gs = generating_set(L, seed);
    SubmoduleSearch sr =
        find_proper_submodule(gs.ads, L.p(), L.dim(), seed, budget);
    switch (sr.verdict) {
        case ModuleVerdict::submodule: return Verdict::no;
        case ModuleVerdict::irreducible: return Verdict::yes;
        case ModuleVerdict::unknown: return Verdict::unknown;
    }
    return Verdict::unknown;
}

// Independent confirmation: in a simple algebra every nonzero element
// generates the whole algebra as an ideal.
inline bool confirm_simple_by_spins(const LieAlgebra& L, uint64_t seed = 0,
                                    int trials = 20) {
    if (L.dim() == 0 || L.is_abelian()) return false;
    std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4full);
    for (int t = 0; t < trials; ++t) {
        Vec v(L.p(), L.dim());
        while (v.is_zero())
            for (int i = 0; i < L.dim(); ++i) v.set(i, fp_t(rng() % L.p()));
        if (ideal_closure(L, {v}).dim() != L.dim()) return false;
    }
    return true;
}

// Simple constituents: strip the radical, then peel minimal ideals off the
// radical-free quotient. Returned algebras are sorted by descending
// dimension for reproducible reports.
inline std::vector<LieAlgebra> simple_constituents(const LieAlgebra& L,
                                                   uint64_t seed = 0) {
    std::vector<LieAlgebra> out;
    LieAlgebra q = L;
    while (q.dim() > 0) {
        // peeling an ideal can expose a new radical (e.g. an abelian line)
        LieSubspace rad = solvable_radical(q, seed);
        if (rad.dim() == q.dim()) break;
        if (rad.dim() > 0) {
            q = quotient(q, rad).algebra;
            continue;
        }
        std::vector<LieSubspace> mins = minimal_ideals(q, seed);
        assert(!mins.empty());
        const LieSubspace& I = mins.front();
        if (I.dim() == q.dim()) {
            out.push_back(q);
            break;
        }
        out.push_back(restrict_to(q, I));
        q = quotient(q, I).algebra;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const LieAlgebra& a, const LieAlgebra& b) {
                         return a.dim() > b.dim();
                     });
    return out;
}

}  // namespace cartan
