#pragma once

#include <string>
#include <vector>

#include "cech/linalg.hpp"
#include "cech/polynomial.hpp"
#include "cech/rational.hpp"

namespace cech {

/// Finite-dimensional Lie algebra over Q given by structure constants
/// c[i][j][k], meaning [b_i, b_j] = sum_k c[i][j][k] b_k. Construction
/// validates antisymmetry and the Jacobi identity on all basis triples.
class LieAlgebra {
  public:
    LieAlgebra(std::vector<std::vector<Vec>> structure_constants, std::vector<std::string> labels,
               std::vector<std::string> dual_labels = {});

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Names of the dual-basis coordinates (used for polynomials and forms).
    const std::vector<std::string>& dual_labels() const { return dual_labels_; }

    const Rat& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[i][j][k]; }
    /// Coordinates of [b_i, b_j].
    Vec bracket_basis(std::size_t i, std::size_t j) const { return c_[i][j]; }
    /// Coordinates of [u, v] for coordinate vectors u, v.
    Vec bracket(const Vec& u, const Vec& v) const;
    /// Matrix of ad(b_i).
    Matrix ad(std::size_t i) const;

  private:
    std::size_t dim_;
    std::vector<std::vector<Vec>> c_;
    std::vector<std::string> labels_;
    std::vector<std::string> dual_labels_;
};

/// Symmetric bilinear form on the algebra, as a matrix in the chosen basis.
struct SymBilinearForm {
    Matrix matrix;

    explicit SymBilinearForm(Matrix m);
    Rat operator()(const Vec& u, const Vec& v) const;
};

LieAlgebra lie_algebra_from_structure_constants(const std::vector<std::vector<Vec>>& table,
                                                const std::vector<std::string>& labels,
                                                const std::vector<std::string>& dual_labels = {});

/// Loads the JSON input format:
///   { "labels": [...], "dual_labels": [...optional...],
///     "brackets": [[i, j, [[k, "num/den"], ...]], ...] }
/// Indices are 0-based; omitted brackets are zero; the antisymmetric
/// completion is applied automatically.
LieAlgebra load_lie_algebra_json(const std::string& path);
LieAlgebra lie_algebra_from_json_text(const std::string& text);

/// kappa(u, v) = trace(ad u . ad v).
SymBilinearForm killing_form(const LieAlgebra& g);

/// Homogeneous polynomial in the dual-basis coordinates of g.
struct InvariantPolynomial {
    Polynomial poly;

    InvariantPolynomial(const LieAlgebra& g, Polynomial p);
    int degree() const { return poly.degree(); }
};

/// True iff the infinitesimal coadjoint action of every basis element
/// annihilates p.
bool is_invariant(const InvariantPolynomial& p, const LieAlgebra& g);
bool is_invariant(const Polynomial& p, const LieAlgebra& g);

// Test fixtures / built-in constructors.
LieAlgebra sl2();
LieAlgebra sl3();
LieAlgebra abelian(std::size_t n);
/// The determinant polynomial -x^2 - y*z of sl2.
Polynomial sl2_determinant();
/// The trace form tr(X^2) of sl3 in dual coordinates.
Polynomial sl3_casimir();

}  // namespace cech
