#pragma once

#include <optional>
#include <vector>

#include "cech/rational.hpp"

namespace cech {

using Vec = std::vector<Rat>;

/// Dense matrix over Q. Row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-() const;
    bool operator==(const Matrix& rhs) const = default;

    Vec apply(const Vec& v) const;  // matrix * column vector
    Vec column(std::size_t j) const;
    void set_column(std::size_t j, const Vec& v);

    /// Columns of rhs appended on the right.
    Matrix hstack(const Matrix& rhs) const;

    /// In-place reduced row echelon form; returns pivot columns in order.
    /// If col_order is given, columns are eliminated in that order (a
    /// permutation of 0..cols-1); pivot columns are reported in natural ids.
    std::vector<std::size_t> rref(const std::vector<std::size_t>* col_order = nullptr);

    std::size_t rank() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Basis of the right null space {x : M x = 0}, as columns.
std::vector<Vec> kernel_basis(const Matrix& m);

/// Particular solution of M x = b with free variables set to zero,
/// deterministic given col_order (defaults to 0,1,2,...).
std::optional<Vec> solve(const Matrix& m, const Vec& b,
                         const std::vector<std::size_t>* col_order = nullptr);

bool in_column_span(const Matrix& m, const Vec& v);

/// Kronecker product, basis order (i,j) -> i * b.rows() + j.
Matrix kron(const Matrix& a, const Matrix& b);

/// Basis (as columns) of the intersection of two column spans.
std::vector<Vec> span_intersection(const Matrix& a, const Matrix& b);

Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& a);
bool vec_is_zero(const Vec& v);

/// A subspace-with-relations presentation of a subquotient U/V of an
/// ambient Q^n, with V contained in span(U). Classes of ambient vectors are
/// compared through a canonical reduction modulo span(V).
class Subquotient {
  public:
    Subquotient() = default;
    /// gens, rels: columns in ambient coordinates.
    Subquotient(std::size_t ambient_dim, std::vector<Vec> gens, std::vector<Vec> rels);

    std::size_t dim() const { return dim_; }
    std::size_t ambient_dim() const { return ambient_; }

    /// True if v lies in span(gens) + span(rels).
    bool contains(const Vec& v) const;

    /// Canonical representative of v modulo span(rels). Vectors in the same
    /// class reduce identically. Throws if !contains(v).
    Vec class_of(const Vec& v) const;

    bool class_is_zero(const Vec& v) const;
    bool same_class(const Vec& a, const Vec& b) const;

    /// Representatives of a basis of the subquotient, in ambient coords.
    const std::vector<Vec>& basis() const { return basis_; }

  private:
    Vec reduce_mod_rels(Vec v) const;

    std::size_t ambient_ = 0;
    std::size_t dim_ = 0;
    std::vector<Vec> basis_;
    // RREF rows spanning the relation space, with pivot columns.
    std::vector<Vec> rel_rows_;
    std::vector<std::size_t> rel_pivots_;
    Matrix gens_and_rels_;  // for membership tests
};

/// Incremental row-space builder: feed vectors, keeps an RREF basis.
class SpanBuilder {
  public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}
    /// Returns true if v enlarged the span.
    bool insert(Vec v);
    bool contains(Vec v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& rows() const { return rows_; }

  private:
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace cech
