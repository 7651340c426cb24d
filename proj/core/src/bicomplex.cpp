#include "cech/bicomplex.hpp"

#include <algorithm>

namespace cech {

void Bicomplex::set_dim(int p, int q, std::size_t dim) {
    if (p < 0 || q < 0) throw IndexOutOfRange("bicomplex spots live in the first quadrant");
    if (dim == 0) {
        dims_.erase({p, q});
    } else {
        dims_[{p, q}] = dim;
        max_p_ = std::max(max_p_, p);
        max_q_ = std::max(max_q_, q);
    }
}

std::size_t Bicomplex::dim(int p, int q) const {
    if (p < 0 || q < 0) return 0;
    auto it = dims_.find({p, q});
    return it == dims_.end() ? 0 : it->second;
}

void Bicomplex::set_dI(int p, int q, Matrix m) {
    if (m.rows() != dim(p + 1, q) || m.cols() != dim(p, q))
        throw InvalidDifferentials("dI shape mismatch");
    dI_[{p, q}] = std::move(m);
}

void Bicomplex::set_dII(int p, int q, Matrix m) {
    if (m.rows() != dim(p, q + 1) || m.cols() != dim(p, q))
        throw InvalidDifferentials("dII shape mismatch");
    dII_[{p, q}] = std::move(m);
}

Matrix Bicomplex::dI(int p, int q) const {
    auto it = dI_.find({p, q});
    if (it != dI_.end()) return it->second;
    return Matrix(dim(p + 1, q), dim(p, q));
}

Matrix Bicomplex::dII(int p, int q) const {
    auto it = dII_.find({p, q});
    if (it != dII_.end()) return it->second;
    return Matrix(dim(p, q + 1), dim(p, q));
}

void Bicomplex::validate() const {
    for (int p = 0; p <= max_p_; ++p)
        for (int q = 0; q <= max_q_; ++q) {
            if (dim(p, q) == 0) continue;
            if (!(dI(p + 1, q) * dI(p, q)).is_zero())
                throw InvalidDifferentials("dI^2 != 0 at (" + std::to_string(p) + "," +
                                           std::to_string(q) + ")");
            if (!(dII(p, q + 1) * dII(p, q)).is_zero())
                throw InvalidDifferentials("dII^2 != 0 at (" + std::to_string(p) + "," +
                                           std::to_string(q) + ")");
            Matrix anti = dII(p + 1, q) * dI(p, q) + dI(p, q + 1) * dII(p, q);
            if (!anti.is_zero())
                throw InvalidDifferentials("dI dII + dII dI != 0 at (" + std::to_string(p) + "," +
                                           std::to_string(q) + ")");
        }
}

TotalComplex::TotalComplex(const Bicomplex& L) : L_(&L) {
    L.validate();
    int max_n = L.max_p() + L.max_q();
    if (max_n < 0) return;
    degrees_.resize(max_n + 1);
    for (int n = 0; n <= max_n; ++n) {
        TotalDegreeData& data = degrees_[n];
        std::size_t off = 0;
        for (int p = 0; p <= std::min(n, L.max_p()); ++p) {
            int q = n - p;
            std::size_t d = L.dim(p, q);
            if (d == 0) continue;
            data.spots.push_back({p, q});
            data.offsets.push_back(off);
            off += d;
        }
        data.total_dim = off;
    }
    // Total differential D = dI + dII blockwise.
    for (int n = 0; n <= max_n; ++n) {
        TotalDegreeData& src = degrees_[n];
        std::size_t target_dim = (n + 1 <= max_n) ? degrees_[n + 1].total_dim : 0;
        Matrix D(target_dim, src.total_dim);
        if (n + 1 <= max_n) {
            const TotalDegreeData& dst = degrees_[n + 1];
            for (std::size_t bs = 0; bs < src.spots.size(); ++bs) {
                auto [p, q] = src.spots[bs];
                auto place = [&](const Matrix& m, const Spot& target) {
                    if (m.rows() == 0) return;
                    for (std::size_t bt = 0; bt < dst.spots.size(); ++bt) {
                        if (dst.spots[bt] != target) continue;
                        for (std::size_t i = 0; i < m.rows(); ++i)
                            for (std::size_t j = 0; j < m.cols(); ++j)
                                D.at(dst.offsets[bt] + i, src.offsets[bs] + j) = m.at(i, j);
                    }
                };
                place(L.dI(p, q), {p + 1, q});
                place(L.dII(p, q), {p, q + 1});
            }
        }
        src.d = std::move(D);
    }
    for (int n = 0; n <= max_n; ++n) {
        TotalDegreeData& data = degrees_[n];
        data.cocycles = kernel_basis(data.d);
        if (n > 0) {
            const Matrix& prev = degrees_[n - 1].d;
            SpanBuilder span(data.total_dim);
            for (std::size_t j = 0; j < prev.cols(); ++j) {
                Vec img = prev.column(j);
                if (!vec_is_zero(img) && span.insert(img)) data.boundaries.push_back(std::move(img));
            }
        }
        data.cohomology = Subquotient(data.total_dim, data.cocycles, data.boundaries);
    }
}

const TotalDegreeData& TotalComplex::degree(int n) const {
    if (n < 0 || n > max_n()) return empty_;
    return degrees_[n];
}

std::size_t TotalComplex::block_offset(int n, const Spot& s) const {
    const TotalDegreeData& data = degree(n);
    for (std::size_t i = 0; i < data.spots.size(); ++i)
        if (data.spots[i] == s) return data.offsets[i];
    throw IndexOutOfRange("block_offset: spot has dimension zero");
}

Vec TotalComplex::component(const Vec& x, int n, const Spot& s, std::size_t block_dim) const {
    Vec out(block_dim, Rat(0));
    const TotalDegreeData& data = degree(n);
    for (std::size_t i = 0; i < data.spots.size(); ++i) {
        if (data.spots[i] != s) continue;
        for (std::size_t k = 0; k < block_dim; ++k) out[k] = x[data.offsets[i] + k];
    }
    return out;
}

std::size_t TotalComplex::filtration_offset(int n, int p) const {
    const TotalDegreeData& data = degree(n);
    for (std::size_t i = 0; i < data.spots.size(); ++i)
        if (data.spots[i].first >= p) return data.offsets[i];
    return data.total_dim;
}

std::vector<Vec> TotalComplex::filtered_cocycles(int n, int p) const {
    const TotalDegreeData& data = degree(n);
    std::size_t cut = filtration_offset(n, p);
    // Kernel of d restricted to coordinates >= cut.
    std::size_t sub_dim = data.total_dim - cut;
    Matrix restricted(data.d.rows(), sub_dim);
    for (std::size_t i = 0; i < data.d.rows(); ++i)
        for (std::size_t j = 0; j < sub_dim; ++j) restricted.at(i, j) = data.d.at(i, cut + j);
    std::vector<Vec> out;
    for (Vec& k : kernel_basis(restricted)) {
        Vec full(data.total_dim, Rat(0));
        for (std::size_t j = 0; j < sub_dim; ++j) full[cut + j] = k[j];
        out.push_back(std::move(full));
    }
    return out;
}

std::vector<Vec> TotalComplex::filtered_boundaries(int n, int p) const {
    const TotalDegreeData& data = degree(n);
    std::size_t cut = filtration_offset(n, p);
    if (data.boundaries.empty()) return {};
    Matrix b = Matrix::from_columns(data.total_dim, data.boundaries);
    // Coordinate subspace F_p.
    std::size_t sub_dim = data.total_dim - cut;
    Matrix inc(data.total_dim, sub_dim);
    for (std::size_t j = 0; j < sub_dim; ++j) inc.at(cut + j, j) = 1;
    return span_intersection(b, inc);
}

TotalCohomology total_cohomology(const Bicomplex& L) {
    TotalComplex tc(L);
    TotalCohomology out;
    for (int n = 0; n <= tc.max_n(); ++n) {
        const TotalDegreeData& data = tc.degree(n);
        out.dims.push_back(data.cohomology.dim());
        out.bases.push_back(data.cohomology.basis());
    }
    return out;
}

}  // namespace cech
