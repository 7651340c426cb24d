#pragma once

#include <cstdint>
#include <map>

#include "cech/bicomplex.hpp"

namespace cech {

enum class Page { e1, e2, einf };

/// One page of the spectral sequence in the dII orientation:
/// E1^{p,q} = H^q(L^{p,.}), E2 its dI-cohomology, Einf the graded pieces of
/// the column filtration on total cohomology. E1/E2 entries are subquotients
/// of L^{p,q}; Einf entries are subquotients of the total cochain space.
struct PageData {
    Page n = Page::e1;
    std::map<Spot, Subquotient> entries;

    std::size_t dim(int p, int q) const;
};

PageData page(const Bicomplex& L, Page n);

/// Class of the (p,q)-component of a total cocycle x (lying in filtration
/// >= p) in the chosen page entry. x is given in total coordinates of
/// degree p+q. Throws NotInFiltration if a component below column p is
/// nonzero, InvalidDifferentials if x is not a total cocycle.
Vec edge_map_eval(const Bicomplex& L, Page n, int p, int q, const Vec& x);

/// Deterministic random instances: dims <= max_dim on a support of size
/// <= 4 x 4, entries in {-2..2}; differentials satisfy the bicomplex
/// identities by construction. Mixes several construction styles by seed.
Bicomplex random_bicomplex(std::uint64_t seed, std::size_t max_dim = 4);

/// Representatives of E2 numerators at (p,q): {u : dII u = 0, dI u in im dII}.
std::vector<Vec> e2_cocycles(const Bicomplex& L, int p, int q);
/// E2 denominator at (p,q): im dII^{p,q-1} + dI(ker dII^{p-1,q}).
std::vector<Vec> e2_relations(const Bicomplex& L, int p, int q);

}  // namespace cech
