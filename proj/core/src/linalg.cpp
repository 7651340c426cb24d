#include "cech/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace cech {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DimensionMismatch("from_columns: bad column length");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& r) { return r == 0; });
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix r(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                if (rhs.at(k, j) != 0) r.at(i, j) += x * rhs.at(k, j);
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + rhs.a_[i];
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw DimensionMismatch("apply: vector length mismatch");
    Vec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    return r;
}

Vec Matrix::column(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Matrix Matrix::hstack(const Matrix& rhs) const {
    if (rows_ != rhs.rows_) throw DimensionMismatch("hstack row mismatch");
    Matrix r(rows_, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < rhs.cols_; ++j) r.at(i, cols_ + j) = rhs.at(i, j);
    }
    return r;
}

std::vector<std::size_t> Matrix::rref(const std::vector<std::size_t>* col_order) {
    std::vector<std::size_t> order;
    if (col_order) {
        order = *col_order;
    } else {
        order.resize(cols_);
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t oc = 0; oc < order.size() && row < rows_; ++oc) {
        std::size_t col = order[oc];
        std::size_t sel = rows_;
        for (std::size_t i = row; i < rows_; ++i) {
            if (at(i, col) != 0) {
                sel = i;
                break;
            }
        }
        if (sel == rows_) continue;
        if (sel != row)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
        Rat inv = 1 / at(row, col);
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(row, j) != 0) at(row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || at(i, col) == 0) continue;
            Rat f = at(i, col);
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(row, j) != 0) at(i, j) -= f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t Matrix::rank() const {
    Matrix copy = *this;
    return copy.rref().size();
}

std::vector<Vec> kernel_basis(const Matrix& m) {
    Matrix r = m;
    std::vector<std::size_t> pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), Rat(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r.at(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b, const std::vector<std::size_t>* col_order) {
    if (b.size() != m.rows()) throw DimensionMismatch("solve: rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> order;
    if (col_order) {
        order = *col_order;
    } else {
        order.resize(m.cols());
        std::iota(order.begin(), order.end(), 0);
    }
    std::vector<std::size_t> pivots = aug.rref(&order);
    // Inconsistent iff some row is (0,...,0 | nonzero).
    for (std::size_t i = 0; i < aug.rows(); ++i) {
        bool lhs_zero = true;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (aug.at(i, j) != 0) {
                lhs_zero = false;
                break;
            }
        if (lhs_zero && aug.at(i, m.cols()) != 0) return std::nullopt;
    }
    Vec x(m.cols(), Rat(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        // Row k has pivot 1 at column pivots[k]; free vars are zero, so
        // x[pivot] = augmented entry minus contributions of other pivots
        // (which are zero in RREF). Hence:
        x[pivots[k]] = aug.at(k, m.cols());
    }
    return x;
}

bool in_column_span(const Matrix& m, const Vec& v) { return solve(m, v).has_value(); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            if (a.at(ia, ja) == 0) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    if (b.at(ib, jb) != 0)
                        r.at(ia * b.rows() + ib, ja * b.cols() + jb) = a.at(ia, ja) * b.at(ib, jb);
        }
    return r;
}

std::vector<Vec> span_intersection(const Matrix& a, const Matrix& b) {
    // x in span(a) ∩ span(b)  <=>  x = a s = b t; solve [a | -b] (s;t) = 0.
    Matrix combined = a.hstack(-b);
    std::vector<Vec> null = kernel_basis(combined);
    std::vector<Vec> result;
    SpanBuilder span(a.rows());
    for (const Vec& n : null) {
        Vec s(n.begin(), n.begin() + a.cols());
        Vec x = a.apply(s);
        if (!vec_is_zero(x) && span.insert(x)) result.push_back(std::move(x));
    }
    return result;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r == 0; });
}

Subquotient::Subquotient(std::size_t ambient_dim, std::vector<Vec> gens, std::vector<Vec> rels)
    : ambient_(ambient_dim) {
    // Relations in RREF row form, for canonical reduction.
    SpanBuilder rel_span(ambient_dim);
    for (Vec& r : rels) rel_span.insert(std::move(r));
    rel_rows_ = rel_span.rows();
    rel_pivots_.clear();
    for (const Vec& row : rel_rows_) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        rel_pivots_.push_back(p);
    }

    std::vector<Vec> all_cols;
    SpanBuilder basis_span(ambient_dim);
    for (const Vec& row : rel_rows_) basis_span.insert(row);
    std::size_t rel_rank = basis_span.rank();
    for (Vec& g : gens) {
        Vec reduced = reduce_mod_rels(g);
        all_cols.push_back(std::move(g));
        if (!vec_is_zero(reduced) && basis_span.insert(reduced)) basis_.push_back(std::move(reduced));
    }
    dim_ = basis_span.rank() - rel_rank;
    for (const Vec& row : rel_rows_) all_cols.push_back(row);
    gens_and_rels_ = Matrix::from_columns(ambient_dim, all_cols);
}

Vec Subquotient::reduce_mod_rels(Vec v) const {
    for (std::size_t k = 0; k < rel_rows_.size(); ++k) {
        std::size_t p = rel_pivots_[k];
        if (v[p] != 0) {
            Rat f = v[p];  // rel rows have pivot 1
            for (std::size_t j = 0; j < v.size(); ++j)
                if (rel_rows_[k][j] != 0) v[j] -= f * rel_rows_[k][j];
        }
    }
    return v;
}

bool Subquotient::contains(const Vec& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("Subquotient::contains");
    if (gens_and_rels_.cols() == 0) return vec_is_zero(v);
    return in_column_span(gens_and_rels_, v);
}

Vec Subquotient::class_of(const Vec& v) const {
    if (!contains(v)) throw DimensionMismatch("Subquotient::class_of: vector not in subspace");
    return reduce_mod_rels(v);
}

bool Subquotient::class_is_zero(const Vec& v) const { return vec_is_zero(class_of(v)); }

bool Subquotient::same_class(const Vec& a, const Vec& b) const {
    return class_of(a) == class_of(b);
}

bool SpanBuilder::insert(Vec v) {
    if (v.size() != dim_) throw DimensionMismatch("SpanBuilder::insert");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        std::size_t p = pivots_[k];
        if (v[p] != 0) {
            Rat f = v[p];
            for (std::size_t j = 0; j < dim_; ++j)
                if (rows_[k][j] != 0) v[j] -= f * rows_[k][j];
        }
    }
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    Rat inv = 1 / v[p];
    for (std::size_t j = 0; j < dim_; ++j)
        if (v[j] != 0) v[j] *= inv;
    // Back-substitute to keep rows fully reduced.
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (rows_[k][p] != 0) {
            Rat f = rows_[k][p];
            for (std::size_t j = 0; j < dim_; ++j)
                if (v[j] != 0) rows_[k][j] -= f * v[j];
        }
    }
    // Insert keeping pivot order increasing.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
}

bool SpanBuilder::contains(Vec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        std::size_t p = pivots_[k];
        if (v[p] != 0) {
            Rat f = v[p];
            for (std::size_t j = 0; j < dim_; ++j)
                if (rows_[k][j] != 0) v[j] -= f * rows_[k][j];
        }
    }
    return vec_is_zero(v);
}

}  // namespace cech
