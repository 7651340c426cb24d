#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cech/linalg.hpp"

namespace cech {

using Spot = std::pair<int, int>;  // (p, q)

/// First-quadrant bicomplex of finite-dimensional Q-vector spaces with
/// anticommuting differentials dI: (p,q) -> (p+1,q) and dII: (p,q) -> (p,q+1)
/// given by matrices (rows = target, cols = source).
class Bicomplex {
  public:
    Bicomplex() = default;

    void set_dim(int p, int q, std::size_t dim);
    std::size_t dim(int p, int q) const;

    void set_dI(int p, int q, Matrix m);
    void set_dII(int p, int q, Matrix m);
    /// Differentials default to zero matrices of the right shape.
    Matrix dI(int p, int q) const;
    Matrix dII(int p, int q) const;

    int max_p() const { return max_p_; }
    int max_q() const { return max_q_; }

    /// Checks shapes, dI^2 = 0, dII^2 = 0 and dI dII + dII dI = 0.
    void validate() const;

  private:
    std::map<Spot, std::size_t> dims_;
    std::map<Spot, Matrix> dI_, dII_;
    int max_p_ = -1, max_q_ = -1;
};

/// Total-complex data for one degree n: the blocks are ordered by
/// increasing p, so the filtration F_p (dII orientation) is a suffix of the
/// coordinates.
struct TotalDegreeData {
    std::vector<Spot> spots;
    std::vector<std::size_t> offsets;
    std::size_t total_dim = 0;
    Matrix d;                     // T^n -> T^{n+1}
    std::vector<Vec> cocycles;    // ker d
    std::vector<Vec> boundaries;  // im of previous d
    Subquotient cohomology;
};

/// Flattened total complex with exact cohomology per degree.
class TotalComplex {
  public:
    explicit TotalComplex(const Bicomplex& L);

    int max_n() const { return static_cast<int>(degrees_.size()) - 1; }
    const TotalDegreeData& degree(int n) const;

    /// Coordinate offset of block (p,q) inside T^{p+q}.
    std::size_t block_offset(int n, const Spot& s) const;
    /// Extract the (p,q) component of a total vector.
    Vec component(const Vec& x, int n, const Spot& s, std::size_t block_dim) const;
    /// Index of the first coordinate of filtration F_p in degree n.
    std::size_t filtration_offset(int n, int p) const;

    /// Basis of cocycles lying in F_p (components below column p vanish).
    std::vector<Vec> filtered_cocycles(int n, int p) const;
    /// Basis of (boundaries intersect F_p).
    std::vector<Vec> filtered_boundaries(int n, int p) const;

  private:
    const Bicomplex* L_;
    std::vector<TotalDegreeData> degrees_;
    TotalDegreeData empty_;
};

/// Graded dimensions and basis of the total cohomology.
struct TotalCohomology {
    std::vector<std::size_t> dims;  // index n
    std::vector<std::vector<Vec>> bases;
};

TotalCohomology total_cohomology(const Bicomplex& L);

}  // namespace cech
