#pragma once

#include <map>
#include <vector>

#include "cech/form.hpp"
#include "cech/linalg.hpp"

namespace cech {

/// Element of Lambda^q(C^p g^dual): p is the simplicial degree (the form
/// lives on p+1 slots), q the form degree.
struct BigradedElement {
    int p = 0;
    int q = 0;
    Form value;

    BigradedElement() = default;
    BigradedElement(int p_, int q_, Form v);
};

BigradedElement zero_element(const LieAlgebra& g, int p, int q);

/// Coface i (0 <= i <= p+1): inserts an empty slot at position i; slot
/// indices >= i shift up by one. Extended multiplicatively to monomials.
BigradedElement coface(std::size_t i, const BigradedElement& e);

/// Codegeneracy j (0 <= j <= p-1): identifies slots j and j+1 (the linear
/// dual of a simplicial degeneracy sums adjacent components). Internal
/// helper for the inverse Alexander-Whitney machinery.
BigradedElement codegeneracy(std::size_t j, const BigradedElement& e);

/// d_I = sum of all p+2 cofaces with alternating signs.
BigradedElement d_I(const BigradedElement& e);

/// d_II = (-1)^p times the slotwise Chevalley-Eilenberg differential.
BigradedElement d_II(const BigradedElement& e, const LieAlgebra& g);

/// True iff the element lies in Lambda^q(Sigma^p g^dual), decided by linear
/// membership against the enumerated Sigma wedge basis.
bool is_in_sigma(const BigradedElement& e);

/// Basis vector of Sigma^p g^dual: xi_i at slot s minus xi_i at slot s+1,
/// for s = 0..p-1; basis-major order.
Form sigma_basis_vector(std::size_t dim, int p, std::size_t basis_index, std::size_t s);

/// Wedges of q distinct Sigma^p basis vectors, in combination order.
std::vector<Form> sigma_wedge_basis(std::size_t dim, int p, int q);

/// Assigns dense coordinates to the union of monomials of a family of forms.
class FormIndexer {
  public:
    void add(const Form& f);
    std::size_t size() const { return keys_.size(); }
    bool covers(const Form& f) const;
    Vec coords(const Form& f) const;
    Matrix matrix_of(const std::vector<Form>& columns) const;

  private:
    std::map<MonKey, std::size_t> index_;
    std::vector<MonKey> keys_;
};

}  // namespace cech
