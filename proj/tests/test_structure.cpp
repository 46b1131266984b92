#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cartan/families.hpp"
#include "cartan/lie.hpp"
#include "cartan/structure.hpp"

using namespace cartan;

namespace {

LieAlgebra derived_part(const LieAlgebra& L, int times = 1) {
    LieAlgebra cur = L;
    for (int t = 0; t < times; ++t) {
        LieSubspace d = derived_subalgebra(cur, full_subspace(cur));
        cur = restrict_to(cur, d);
    }
    return cur;
}

LieAlgebra heisenberg(int p) {
    LieAlgebra L(p, 3);
    L.set_bracket(0, 1, {{2, 1}});
    return L;
}

// Block-diagonal sum of two algebras.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    assert(a.p() == b.p());
    int da = a.dim(), d = da + b.dim();
    LieAlgebra out(a.p(), d);
    auto copy_block = [&](const LieAlgebra& src, int off) {
        for (int i = 0; i < src.dim(); ++i)
            for (int j = i + 1; j < src.dim(); ++j) {
                std::vector<std::pair<int, fp_t>> terms;
                for (auto [k, c] : src.bracket_terms(i, j))
                    terms.emplace_back(k + off, c);
                out.set_bracket(i + off, j + off, std::move(terms));
            }
    };
    copy_block(a, 0);
    copy_block(b, da);
    return out;
}

std::vector<Matrix> adjoint_gens(const LieAlgebra& L) {
    std::vector<Matrix> gens;
    for (int i = 0; i < L.dim(); ++i) gens.push_back(L.ad_basis(i));
    return gens;
}

std::vector<int> sorted_dims(const std::vector<LieAlgebra>& algs) {
    std::vector<int> dims;
    for (const LieAlgebra& a : algs) dims.push_back(a.dim());
    std::sort(dims.begin(), dims.end());
    return dims;
}

}  // namespace

TEST_CASE("spin closes a vector under the module action") {
    LieAlgebra Wd = derived_part(build(FamilyTag::W, {3}).algebra);
    std::vector<Matrix> gens = adjoint_gens(Wd);

    Vec e0(2, 7);
    e0.set(0, 1);
    REQUIRE(spin(gens, e0).dim() == 7);
    REQUIRE(spin(gens, Vec(2, 7)).dim() == 0);

    LieAlgebra h = heisenberg(2);
    Vec center_vec(2, 3);
    center_vec.set(2, 1);
    REQUIRE(spin(adjoint_gens(h), center_vec).dim() == 1);
}

TEST_CASE("proper submodule search") {
    SECTION("simple adjoint module is irreducible") {
        LieAlgebra Wd = derived_part(build(FamilyTag::W, {3}).algebra);
        GeneratingSet gs = generating_set(Wd, 0);
        SubmoduleSearch sr = find_proper_submodule(gs.ads, 2, Wd.dim(), 0);
        REQUIRE(sr.verdict == ModuleVerdict::irreducible);
    }

    SECTION("a block sum splits") {
        LieAlgebra A = derived_part(build(FamilyTag::W, {2}).algebra);
        LieAlgebra B = derived_part(build(FamilyTag::W, {3}).algebra);
        LieAlgebra sum = direct_sum(A, B);
        GeneratingSet gs = generating_set(sum, 0);
        SubmoduleSearch sr = find_proper_submodule(gs.ads, 2, sum.dim(), 0);
        REQUIRE(sr.verdict == ModuleVerdict::submodule);
        REQUIRE(sr.submodule.dim() > 0);
        REQUIRE(sr.submodule.dim() < sum.dim());
        REQUIRE(is_ideal(sum, {&sum, sr.submodule}));
    }

    SECTION("zero budget reports unknown") {
        LieAlgebra Wd = derived_part(build(FamilyTag::W, {3}).algebra);
        GeneratingSet gs = generating_set(Wd, 0);
        SubmoduleSearch sr = find_proper_submodule(gs.ads, 2, Wd.dim(), 0, 0);
        REQUIRE(sr.verdict == ModuleVerdict::unknown);
        REQUIRE_THROWS_AS(chop(gs.ads, 2, Wd.dim(), 0, 0), std::runtime_error);
    }
}

TEST_CASE("composition factors of adjoint modules") {
    auto factor_dims = [](const LieAlgebra& L) {
        GeneratingSet gs = generating_set(L, 0);
        std::vector<int> dims;
        for (const ModuleFactor& f : chop(gs.ads, L.p(), L.dim(), 0))
            dims.push_back(f.dim);
        std::sort(dims.begin(), dims.end());
        return dims;
    };

    LieAlgebra Wd = derived_part(build(FamilyTag::W, {3}).algebra);
    REQUIRE(factor_dims(Wd) == std::vector<int>{7});

    LieAlgebra Sd = derived_part(build(FamilyTag::S, {1, 2}).algebra);
    REQUIRE(factor_dims(Sd) == std::vector<int>{3, 3});

    LieAlgebra sum = direct_sum(derived_part(build(FamilyTag::W, {2}).algebra),
                                derived_part(build(FamilyTag::W, {3}).algebra));
    REQUIRE(factor_dims(sum) == std::vector<int>{3, 7});
}

TEST_CASE("intertwiner space of a module with itself") {
    LieAlgebra Wd = derived_part(build(FamilyTag::W, {3}).algebra);
    std::vector<Matrix> gens = adjoint_gens(Wd);
    Subspace homs = hom_space(gens, Wd.dim(), gens, Wd.dim(), 2);
    // simple module over GF(2): endomorphisms are the scalars
    REQUIRE(homs.dim() == 1);
    // the solution really intertwines every generator
    Matrix X(2, Wd.dim(), Wd.dim());
    for (int r = 0; r < Wd.dim(); ++r)
        for (int c = 0; c < Wd.dim(); ++c)
            if (homs.basis_row(0).get(r * Wd.dim() + c)) X.set(r, c, 1);
    for (const Matrix& g : gens) REQUIRE(mat_mul(g, X) == mat_mul(X, g));
}

TEST_CASE("minimal invariant subspaces") {
    SECTION("irreducible module has only itself") {
        LieAlgebra Wd = derived_part(build(FamilyTag::W, {3}).algebra);
        GeneratingSet gs = generating_set(Wd, 0);
        std::vector<Subspace> mins = minimal_submodules(gs.ads, 2, Wd.dim(), 0);
        REQUIRE(mins.size() == 1);
        REQUIRE(mins[0].dim() == 7);
    }

    SECTION("block sum has exactly the two blocks") {
        LieAlgebra A = derived_part(build(FamilyTag::W, {2}).algebra);
        LieAlgebra B = derived_part(build(FamilyTag::W, {3}).algebra);
        LieAlgebra sum = direct_sum(A, B);
        std::vector<LieSubspace> mins = minimal_ideals(sum, 0);
        REQUIRE(mins.size() == 2);
        std::vector<int> dims{mins[0].dim(), mins[1].dim()};
        std::sort(dims.begin(), dims.end());
        REQUIRE(dims == std::vector<int>{3, 7});
        for (const LieSubspace& s : mins) REQUIRE(is_ideal(sum, s));
    }

    SECTION("nilpotent fixture has only its central line") {
        LieAlgebra h = heisenberg(2);
        std::vector<LieSubspace> mins = minimal_ideals(h, 0);
        REQUIRE(mins.size() == 1);
        REQUIRE(mins[0].dim() == 1);
        Vec e2(2, 3);
        e2.set(2, 1);
        REQUIRE(mins[0].space.contains(e2));
    }
}

TEST_CASE("solvable radical") {
    struct Case {
        FamilyTag tag;
        std::vector<int> m;
        int derived;
        int dim;
        int radical;
    };
    for (const Case& c : {Case{FamilyTag::S, {1, 1}, 0, 3, 3},
                          Case{FamilyTag::S, {1, 2}, 1, 6, 3},
                          Case{FamilyTag::S, {1, 3}, 1, 14, 7},
                          Case{FamilyTag::K, {1, 2, 1}, 0, 12, 9},
                          Case{FamilyTag::K, {1, 2, 2}, 0, 24, 21},
                          Case{FamilyTag::S, {2, 2}, 1, 14, 0}}) {
        LieAlgebra L = derived_part(build(c.tag, c.m).algebra, c.derived);
        REQUIRE(L.dim() == c.dim);
        LieSubspace rad = solvable_radical(L, 0);
        INFO(family_label({c.tag, int(c.m.size()), c.m, 2})
             << " derived^" << c.derived);
        REQUIRE(rad.dim() == c.radical);
        if (rad.dim() > 0 && rad.dim() < L.dim()) {
            REQUIRE(is_ideal(L, rad));
            REQUIRE(is_solvable(restrict_to(L, rad)));
            // quotient by the radical is radical free
            LieAlgebra q = quotient(L, rad).algebra;
            REQUIRE(solvable_radical(q, 0).dim() == 0);
        }
    }

    SECTION("radical is seed independent") {
        LieAlgebra L = derived_part(build(FamilyTag::K, {1, 2, 1}).algebra, 0);
        REQUIRE(solvable_radical(L, 0).space == solvable_radical(L, 7).space);
    }

    SECTION("nilpotent algebras are their own radical") {
        REQUIRE(solvable_radical(heisenberg(2), 0).dim() == 3);
        REQUIRE(is_nilpotent(heisenberg(2)));
        REQUIRE_FALSE(is_nilpotent(build(FamilyTag::S, {1, 1}).algebra));
        REQUIRE(is_solvable(build(FamilyTag::S, {1, 1}).algebra));
    }
}

TEST_CASE("simplicity verdicts") {
    SECTION("simple families") {
        for (int l : {2, 3, 4, 5}) {
            LieAlgebra Wd = derived_part(build(FamilyTag::W, {l}).algebra);
            REQUIRE(Wd.dim() == (1 << l) - 1);
            REQUIRE(is_simple(Wd, 0) == Verdict::yes);
        }
        REQUIRE(is_simple(derived_part(build(FamilyTag::S, {2, 2}).algebra), 0) ==
                Verdict::yes);
        REQUIRE(is_simple(derived_part(build(FamilyTag::S, {2, 3}).algebra), 0) ==
                Verdict::yes);
        REQUIRE(is_simple(build(FamilyTag::S, {1, 1, 1}).algebra, 0) ==
                Verdict::yes);
        REQUIRE(is_simple(build(FamilyTag::H, {1, 1, 1, 1}).algebra, 0) ==
                Verdict::yes);
    }

    SECTION("non-simple algebras") {
        REQUIRE(is_simple(build(FamilyTag::S, {1, 1}).algebra, 0) == Verdict::no);
        REQUIRE(is_simple(build(FamilyTag::K, {1, 1, 1}).algebra, 0) == Verdict::no);
        REQUIRE(is_simple(heisenberg(2), 0) == Verdict::no);
        REQUIRE(is_simple(build(FamilyTag::W, {2}).algebra, 0) == Verdict::no);
        LieAlgebra sum = direct_sum(derived_part(build(FamilyTag::W, {2}).algebra),
                                    derived_part(build(FamilyTag::W, {3}).algebra));
        REQUIRE(is_simple(sum, 0) == Verdict::no);
    }

    SECTION("independent spin confirmation") {
        REQUIRE(confirm_simple_by_spins(
            derived_part(build(FamilyTag::W, {3}).algebra), 0));
        REQUIRE(confirm_simple_by_spins(
            derived_part(build(FamilyTag::S, {2, 2}).algebra), 0));
        REQUIRE_FALSE(confirm_simple_by_spins(heisenberg(2), 0));
    }
}

TEST_CASE("simple constituents") {
    auto dims = [](const LieAlgebra& L) {
        return sorted_dims(simple_constituents(L, 0));
    };

    REQUIRE(dims(derived_part(build(FamilyTag::S, {1, 2}).algebra)) ==
            std::vector<int>{3});
    REQUIRE(dims(derived_part(build(FamilyTag::S, {1, 3}).algebra)) ==
            std::vector<int>{7});
    REQUIRE(dims(build(FamilyTag::K, {1, 2, 1}).algebra) == std::vector<int>{3});
    REQUIRE(dims(build(FamilyTag::S, {1, 1}).algebra) == std::vector<int>{});
    REQUIRE(dims(build(FamilyTag::W, {2}).algebra) == std::vector<int>{3});

    LieAlgebra sum = direct_sum(derived_part(build(FamilyTag::W, {2}).algebra),
                                derived_part(build(FamilyTag::W, {3}).algebra));
    REQUIRE(dims(sum) == std::vector<int>{3, 7});

    SECTION("every constituent is simple") {
        for (const LieAlgebra& c :
             simple_constituents(build(FamilyTag::K, {1, 2, 2}).algebra, 0)) {
            REQUIRE(is_simple(c, 0) == Verdict::yes);
            REQUIRE(confirm_simple_by_spins(c, 0));
        }
    }
}
