#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cech/lie.hpp"
#include "cech/rational.hpp"

namespace cech {

/// A generator of the exterior algebra on C^p g^dual: a dual-basis index
/// together with a simplicial slot. Ordered basis-major, so x1 < x2 < y1.
struct Gen {
    std::uint32_t basis;
    std::uint32_t slot;
    auto operator<=>(const Gen&) const = default;
};

using MonKey = std::vector<Gen>;  // strictly increasing

/// Element of the exterior algebra on slot_count copies of a dual space of
/// dimension space_dim, with exact rational coefficients. Plain forms on
/// g^dual are slot_count = 1. Terms are kept on strictly increasing
/// generator tuples with no zero coefficients.
class Form {
  public:
    Form() = default;
    Form(std::size_t space_dim, std::size_t slot_count)
        : space_dim_(space_dim), slot_count_(slot_count) {}

    static Form unit(std::size_t space_dim, std::size_t slot_count);  // degree 0, coeff 1
    static Form generator(std::size_t space_dim, std::size_t slot_count, std::uint32_t basis,
                          std::uint32_t slot);
    /// Normalizes an arbitrary generator tuple (sorts, tracks the sign,
    /// collapses repeats to zero).
    static Form monomial(std::size_t space_dim, std::size_t slot_count, MonKey key, Rat coeff);

    std::size_t space_dim() const { return space_dim_; }
    std::size_t slot_count() const { return slot_count_; }
    const std::map<MonKey, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_homogeneous() const;
    /// Degree of a homogeneous form; -1 for zero. Throws on mixed degrees.
    int degree() const;

    void add_term(MonKey key, Rat coeff);  // normalizing
    Rat coeff(const MonKey& key) const;

    Form operator+(const Form& rhs) const;
    Form operator-(const Form& rhs) const;
    Form operator*(const Rat& c) const;
    Form operator-() const;
    bool operator==(const Form& rhs) const = default;

  private:
    std::size_t space_dim_ = 0;
    std::size_t slot_count_ = 1;
    std::map<MonKey, Rat> terms_;
};

/// Graded-commutative product.
Form wedge(const Form& a, const Form& b);

/// Chevalley-Eilenberg differential, acting slot by slot. On a degree-1
/// generator xi in slot s it is sum_{i<j} 2 c[i][j][k] xi_i^s ^ xi_j^s,
/// the convention that reproduces "d y = 4 x^y" for sl2; the global sign
/// switch is kCESign.
inline constexpr int kCESign = +1;
Form ce_differential(const Form& a, const LieAlgebra& g);

/// Multilinear alternating evaluation with the 1/d! normalization
/// (u^v = (u (x) v - v (x) u)/2 and its higher-degree analogue).
/// Vectors are coordinate vectors of length space_dim * slot_count, indexed
/// by basis-major generator order; for slot_count = 1 they are plain
/// coordinate vectors on g.
Rat evaluate(const Form& a, const std::vector<Vec>& vectors);

/// The Cartan 3-form eta with eta(u,v,w) = kappa([u,v],w), as the element
/// sum_{i<j<k} kappa([b_i,b_j],b_k) xi_i ^ xi_j ^ xi_k of Lambda^3 g^dual.
Form cartan_three_form(const LieAlgebra& g);

/// Text syntax: "+"-separated terms "coeff lbl<slot>^lbl<slot>^...", slots
/// displayed 1-based, e.g. "3/2 x1^y2^z1". Degree-0 terms are bare
/// rationals; the zero form prints as "0".
std::string form_to_string(const Form& a, const std::vector<std::string>& dual_labels);
Form parse_form(const std::string& text, const std::vector<std::string>& dual_labels,
                std::size_t slot_count);

}  // namespace cech
