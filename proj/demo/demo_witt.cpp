// Walking tour: build the rank one derivation algebra over GF(2), inspect
// its bracket table, pass to the derived subalgebra, and confirm the
// structural facts the library computes (dimension, simplicity, invariants).

#include <cstdio>

#include "cartan/families.hpp"
#include "cartan/isomorphism.hpp"
#include "cartan/lie.hpp"
#include "cartan/structure.hpp"

using namespace cartan;

int main() {
    // W(1,(3)): derivations f D of the divided power algebra in one variable
    // with 2^3 monomials. Basis element i is X(i) D.
    BuiltAlgebra w = build(FamilyTag::W, {3});
    const LieAlgebra& L = w.algebra;
    std::printf("%s over GF(%d), dim %d\n", family_label(w.family).c_str(),
                L.p(), L.dim());

    std::printf("\nnonzero brackets [e_i, e_j]:\n");
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j) {
            const auto& terms = L.bracket_terms(i, j);
            if (terms.empty()) continue;
            std::printf("  [%s, %s] =", L.labels()[size_t(i)].c_str(),
                        L.labels()[size_t(j)].c_str());
            for (const auto& [k, c] : terms) {
                if (c != 1) std::printf(" %d*", int(c));
                std::printf(" %s", L.labels()[size_t(k)].c_str());
            }
            std::printf("\n");
        }

    LieSubspace d = derived_subalgebra(L, full_subspace(L));
    std::printf("\nderived subalgebra: dim %d (codimension %d)\n", d.dim(),
                L.dim() - d.dim());
    LieAlgebra dr = restrict_to(L, d);
    std::printf("derived subalgebra simple? %s\n",
                verdict_name(is_simple(dr)));
    std::printf("confirmed by 20 random ideal spins? %s\n",
                confirm_simple_by_spins(dr) ? "yes" : "no");
    std::printf("invariants: %s\n", fingerprint(dr).to_string().c_str());

    // the full algebra is not simple: the derived subalgebra is a proper ideal
    std::printf("full algebra simple? %s\n", verdict_name(is_simple(L)));
    std::printf("solvable radical of the full algebra: dim %d\n",
                solvable_radical(L).dim());

    // two variable special picture: derived subalgebra and its radical
    BuiltAlgebra s = build(FamilyTag::S, {1, 2});
    LieAlgebra sd = restrict_to(
        s.algebra, derived_subalgebra(s.algebra, full_subspace(s.algebra)));
    std::printf("\n%s': dim %d, radical dim %d\n",
                family_label(s.family).c_str(), sd.dim(),
                solvable_radical(sd).dim());
    std::vector<LieAlgebra> parts = simple_constituents(sd);
    std::printf("simple constituents:");
    for (const LieAlgebra& c : parts) std::printf(" dim %d", c.dim());
    std::printf("\n");

    // the constituent is the derived rank one algebra in disguise
    BuiltAlgebra w2 = build(FamilyTag::W, {2});
    LieAlgebra target = restrict_to(
        w2.algebra, derived_subalgebra(w2.algebra, full_subspace(w2.algebra)));
    IsoResult iso = find_isomorphism(parts.front(), target);
    std::printf("constituent matches W(1,(2))'? %s\n",
                iso_status_name(iso.status));
    return 0;
}
