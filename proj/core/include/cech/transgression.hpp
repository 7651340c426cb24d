#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cech/cosimplicial.hpp"
#include "cech/form.hpp"
#include "cech/lie.hpp"

namespace cech {

/// Image of a symmetric polynomial in the d-fold tensor power of g^dual:
/// rational coefficients on length-d words of dual-basis indices, symmetric
/// under permutation of the word.
struct TensorRep {
    int d = 0;
    std::map<std::vector<std::uint32_t>, Rat> terms;

    bool is_zero() const { return terms.empty(); }
};

/// Monomials map to the average over all orderings of their index word;
/// evaluating the result on the diagonal recovers the polynomial.
TensorRep symmetrize(const InvariantPolynomial& p);

/// The cosimplicial shuffle (Eilenberg-Zilber) map on a tensor whose factors
/// are embedded into Sigma^1 by xi -> (xi, -xi): produces the top chain
/// entry in Lambda^d(Sigma^d g^dual), normalized so the sl2 determinant
/// reproduces the reference a^{2,2}.
BigradedElement inverse_alexander_whitney(const TensorRep& t, const LieAlgebra& g);

/// Deterministic column orders for the recurrence solver.
struct PivotOrder {
    enum class Kind { lex, reverse, shuffled };
    Kind kind = Kind::lex;
    std::uint64_t seed = 0;

    std::vector<std::size_t> make(std::size_t ncols) const;
};

/// Chain (a^{p,q}), p+q = 2d, 1 <= p <= d, satisfying
/// d_II entries[p,q] = d_I entries[p-1,q+1] for p >= 2;
/// entries[d,d] is the inverse Alexander-Whitney image.
struct TransgressionChain {
    int d = 0;
    std::map<std::pair<int, int>, BigradedElement> entries;

    const BigradedElement& at(int p, int q) const { return entries.at({p, q}); }
};

/// Solves d_I(a^{p-1,q+1}) = d_II(a^{p,q}) for p = d down to 2 by exact row
/// reduction over the Sigma wedge basis. Throws UnsolvableSystem when a step
/// has no solution (a sign-convention or input error for invariant inputs).
TransgressionChain solve_recurrence(const BigradedElement& top, const LieAlgebra& g,
                                    const PivotOrder& pivot = {});

/// Closed representative of a class in the Chevalley-Eilenberg cohomology.
struct CohomologyClass {
    int degree = -1;
    Form representative;  // slot_count 1, delta-closed
};

struct TransgressionResult {
    TransgressionChain chain;
    CohomologyClass cls;
};

/// The full edge-map pipeline: symmetrize, inverse Alexander-Whitney, solve
/// the recurrence, read a^{1,2d-1} off through Sigma^1 = g^dual. Requires
/// is_invariant(p).
TransgressionResult transgress(const InvariantPolynomial& p, const LieAlgebra& g,
                               const PivotOrder& pivot = {});
CohomologyClass edge_map(const InvariantPolynomial& p, const LieAlgebra& g,
                         const PivotOrder& pivot = {});

/// Returns t with c1 = t c2 in cohomology (difference after scaling is a
/// coboundary), or nothing if no such t exists. If c1 is cohomologous to
/// zero the result is 0.
std::optional<Rat> classes_proportional(const CohomologyClass& c1, const CohomologyClass& c2,
                                        const LieAlgebra& g);

/// Basis of H^q of the Chevalley-Eilenberg complex, as closed forms.
std::vector<Form> ce_cohomology(const LieAlgebra& g, int q);
std::size_t ce_betti(const LieAlgebra& g, int q);

/// True iff the closed form is a coboundary.
bool is_ce_coboundary(const Form& a, const LieAlgebra& g);

}  // namespace cech
