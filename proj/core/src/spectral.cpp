#include "cech/spectral.hpp"

#include <algorithm>

#include "cech/rng.hpp"

namespace cech {

namespace {

// Kernel of dII at (p,q).
std::vector<Vec> e1_cocycles(const Bicomplex& L, int p, int q) {
    if (L.dim(p, q) == 0) return {};
    return kernel_basis(L.dII(p, q));
}

}  // namespace

/// Representatives of E2 numerators: {u : dII u = 0, dI u in im dII}.
std::vector<Vec> e2_cocycles(const Bicomplex& L, int p, int q) {
    std::size_t nu = L.dim(p, q);
    if (nu == 0) return {};
    std::size_t nw = L.dim(p + 1, q - 1);
    Matrix dII = L.dII(p, q);
    Matrix dI = L.dI(p, q);
    Matrix dIIw = L.dII(p + 1, q - 1);
    std::size_t rows = dII.rows() + dI.rows();
    Matrix m(rows, nu + nw);
    for (std::size_t i = 0; i < dII.rows(); ++i)
        for (std::size_t j = 0; j < nu; ++j) m.at(i, j) = dII.at(i, j);
    for (std::size_t i = 0; i < dI.rows(); ++i) {
        for (std::size_t j = 0; j < nu; ++j) m.at(dII.rows() + i, j) = dI.at(i, j);
        for (std::size_t j = 0; j < nw; ++j) m.at(dII.rows() + i, nu + j) = -dIIw.at(i, j);
    }
    std::vector<Vec> out;
    SpanBuilder span(nu);
    for (const Vec& k : kernel_basis(m)) {
        Vec u(k.begin(), k.begin() + nu);
        if (!vec_is_zero(u) && span.insert(u)) out.push_back(std::move(u));
    }
    return out;
}

/// E2 denominator: im dII^{p,q-1} + dI(ker dII^{p-1,q}).
std::vector<Vec> e2_relations(const Bicomplex& L, int p, int q) {
    std::size_t nu = L.dim(p, q);
    if (nu == 0) return {};
    std::vector<Vec> rels;
    SpanBuilder span(nu);
    Matrix dII = L.dII(p, q - 1);
    for (std::size_t j = 0; j < dII.cols(); ++j) {
        Vec v = dII.column(j);
        if (!vec_is_zero(v) && span.insert(v)) rels.push_back(std::move(v));
    }
    if (L.dim(p - 1, q) > 0) {
        Matrix dI = L.dI(p - 1, q);
        for (const Vec& z : e1_cocycles(L, p - 1, q)) {
            Vec v = dI.apply(z);
            if (!vec_is_zero(v) && span.insert(v)) rels.push_back(std::move(v));
        }
    }
    return rels;
}

std::size_t PageData::dim(int p, int q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? 0 : it->second.dim();
}

PageData page(const Bicomplex& L, Page n) {
    L.validate();
    PageData out;
    out.n = n;
    if (n == Page::einf) {
        TotalComplex tc(L);
        for (int p = 0; p <= L.max_p(); ++p)
            for (int q = 0; q <= L.max_q(); ++q) {
                if (L.dim(p, q) == 0) continue;
                int deg = p + q;
                std::vector<Vec> gens = tc.filtered_cocycles(deg, p);
                std::vector<Vec> rels = tc.filtered_cocycles(deg, p + 1);
                for (Vec& b : tc.filtered_boundaries(deg, p)) rels.push_back(std::move(b));
                out.entries.emplace(Spot{p, q},
                                    Subquotient(tc.degree(deg).total_dim, gens, rels));
            }
        return out;
    }
    for (int p = 0; p <= L.max_p(); ++p)
        for (int q = 0; q <= L.max_q(); ++q) {
            std::size_t d = L.dim(p, q);
            if (d == 0) continue;
            if (n == Page::e1) {
                std::vector<Vec> rels;
                Matrix dII = L.dII(p, q - 1);
                for (std::size_t j = 0; j < dII.cols(); ++j) {
                    Vec v = dII.column(j);
                    if (!vec_is_zero(v)) rels.push_back(std::move(v));
                }
                out.entries.emplace(Spot{p, q}, Subquotient(d, e1_cocycles(L, p, q), rels));
            } else {
                out.entries.emplace(Spot{p, q},
                                    Subquotient(d, e2_cocycles(L, p, q), e2_relations(L, p, q)));
            }
        }
    return out;
}

Vec edge_map_eval(const Bicomplex& L, Page n, int p, int q, const Vec& x) {
    TotalComplex tc(L);
    int deg = p + q;
    const TotalDegreeData& data = tc.degree(deg);
    if (x.size() != data.total_dim) throw DimensionMismatch("edge_map_eval: bad total vector size");
    if (!vec_is_zero(data.d.apply(x)))
        throw InvalidDifferentials("edge_map_eval: x is not a total cocycle");
    std::size_t cut = tc.filtration_offset(deg, p);
    for (std::size_t i = 0; i < cut; ++i)
        if (x[i] != 0) throw NotInFiltration("edge_map_eval: component below filtration " +
                                             std::to_string(p) + " is nonzero");
    if (n == Page::einf) {
        std::vector<Vec> gens = tc.filtered_cocycles(deg, p);
        std::vector<Vec> rels = tc.filtered_cocycles(deg, p + 1);
        for (Vec& b : tc.filtered_boundaries(deg, p)) rels.push_back(std::move(b));
        Subquotient sq(data.total_dim, gens, rels);
        return sq.class_of(x);
    }
    Vec comp = tc.component(x, deg, {p, q}, L.dim(p, q));
    if (n == Page::e1) {
        std::vector<Vec> rels;
        Matrix dII = L.dII(p, q - 1);
        for (std::size_t j = 0; j < dII.cols(); ++j) rels.push_back(dII.column(j));
        Subquotient sq(L.dim(p, q), e1_cocycles(L, p, q), rels);
        return sq.class_of(comp);
    }
    Subquotient sq(L.dim(p, q), e2_cocycles(L, p, q), e2_relations(L, p, q));
    return sq.class_of(comp);
}

namespace {

Matrix random_matrix(XorShift64& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rat(rng.range(-2, 2));
    return m;
}

// Random length-P complex of spaces with given dims: d_{p+1} d_p = 0 built
// by drawing each d_{p+1} from the left annihilator of d_p.
std::vector<Matrix> random_complex_maps(XorShift64& rng, const std::vector<std::size_t>& dims) {
    std::vector<Matrix> maps;
    for (std::size_t p = 0; p + 1 < dims.size(); ++p) {
        std::size_t rows = dims[p + 1], cols = dims[p];
        if (p == 0 || maps.back().is_zero()) {
            maps.push_back(random_matrix(rng, rows, cols));
            continue;
        }
        const Matrix& prev = maps.back();
        // rows of m must be left-null vectors of prev.
        std::vector<Vec> null = kernel_basis(prev.transpose());
        Matrix m(rows, cols);
        if (!null.empty()) {
            for (std::size_t i = 0; i < rows; ++i) {
                Vec row(cols, Rat(0));
                for (const Vec& n : null) {
                    Rat c(rng.range(-2, 2));
                    if (c != 0)
                        for (std::size_t j = 0; j < cols; ++j) row[j] += c * n[j];
                }
                for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = row[j];
            }
        }
        maps.push_back(std::move(m));
    }
    return maps;
}

Bicomplex checkerboard_random(XorShift64& rng, std::size_t max_dim) {
    int P = static_cast<int>(rng.range(1, 3));
    int Q = static_cast<int>(rng.range(1, 3));
    Bicomplex L;
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) L.set_dim(p, q, rng.below(max_dim + 1));
    // dI: each row is an independent random complex.
    for (int q = 0; q <= Q; ++q) {
        std::vector<std::size_t> dims;
        for (int p = 0; p <= P; ++p) dims.push_back(L.dim(p, q));
        std::vector<Matrix> maps = random_complex_maps(rng, dims);
        for (int p = 0; p < P; ++p) L.set_dI(p, q, maps[p]);
    }
    // dII supported on even q only, so dII^2 = 0 automatically; anticommuting
    // with dI is a linear condition solved exactly.
    for (int q = 0; q < Q; q += 2) {
        std::vector<std::size_t> block_off;
        std::size_t nvars = 0;
        for (int p = 0; p <= P; ++p) {
            block_off.push_back(nvars);
            nvars += L.dim(p, q + 1) * L.dim(p, q);
        }
        if (nvars == 0) continue;
        std::size_t nrows = 0;
        std::vector<std::size_t> row_off;
        for (int p = 0; p < P; ++p) {
            row_off.push_back(nrows);
            nrows += L.dim(p + 1, q + 1) * L.dim(p, q);
        }
        Matrix sys(nrows, nvars);
        for (int p = 0; p < P; ++p) {
            Matrix a = L.dI(p, q + 1);  // (p,q+1) -> (p+1,q+1)
            Matrix b = L.dI(p, q);      // (p,q)   -> (p+1,q)
            std::size_t tr = L.dim(p + 1, q + 1), sc = L.dim(p, q);
            // Constraint at p: a * X_p + Y_{p+1} * b = 0, unknowns
            // X_p = dII^{p,q}, Y_{p+1} = dII^{p+1,q}.
            for (std::size_t i = 0; i < tr; ++i)
                for (std::size_t j = 0; j < sc; ++j) {
                    std::size_t row = row_off[p] + i * sc + j;
                    // a * X_p contributes a(i,k) * X_p(k,j)
                    for (std::size_t k = 0; k < L.dim(p, q + 1); ++k)
                        if (a.at(i, k) != 0)
                            sys.at(row, block_off[p] + k * sc + j) += a.at(i, k);
                    // Y_{p+1} * b contributes Y(i,k) * b(k,j)
                    for (std::size_t k = 0; k < L.dim(p + 1, q); ++k)
                        if (b.at(k, j) != 0)
                            sys.at(row, block_off[p + 1] + i * L.dim(p + 1, q) + k) += b.at(k, j);
                }
        }
        std::vector<Vec> null = kernel_basis(sys);
        Vec choice(nvars, Rat(0));
        for (const Vec& n : null) {
            Rat c(rng.range(-2, 2));
            if (c != 0)
                for (std::size_t j = 0; j < nvars; ++j) choice[j] += c * n[j];
        }
        for (int p = 0; p <= P; ++p) {
            std::size_t tr = L.dim(p, q + 1), sc = L.dim(p, q);
            if (tr * sc == 0) continue;
            Matrix m(tr, sc);
            for (std::size_t k = 0; k < tr; ++k)
                for (std::size_t j = 0; j < sc; ++j) m.at(k, j) = choice[block_off[p] + k * sc + j];
            L.set_dII(p, q, std::move(m));
        }
    }
    L.validate();
    return L;
}

Bicomplex anticommuting_squares_random(XorShift64& rng, std::size_t max_dim) {
    // Direct sum of elementary anticommuting unit squares and isolated dots.
    int P = static_cast<int>(rng.range(1, 3));
    int Q = static_cast<int>(rng.range(1, 3));
    std::size_t squares = rng.range(1, static_cast<long>(max_dim));
    std::map<Spot, std::size_t> dims;
    struct Square {
        int p, q;
        std::size_t i;  // index at each corner
        Rat a, b;
    };
    std::vector<Square> placed;
    for (std::size_t s = 0; s < squares; ++s) {
        int p = static_cast<int>(rng.below(P));
        int q = static_cast<int>(rng.below(Q));
        Square sq{p, q, 0, Rat(rng.range(1, 2)), Rat(rng.range(1, 2))};
        sq.i = dims[{p, q}];
        dims[{p, q}]++;
        dims[{p + 1, q}]++;
        dims[{p, q + 1}]++;
        dims[{p + 1, q + 1}]++;
        placed.push_back(sq);
    }
    std::size_t dots = rng.below(3);
    for (std::size_t s = 0; s < dots; ++s)
        dims[{static_cast<int>(rng.below(P + 1)), static_cast<int>(rng.below(Q + 1))}]++;

    Bicomplex L;
    std::map<Spot, std::size_t> used;
    for (const auto& [spot, d] : dims) L.set_dim(spot.first, spot.second, d);
    // Corner coordinates per square: allocate in placement order.
    std::map<Spot, std::size_t> cursor;
    struct Corner {
        std::size_t at00, at10, at01, at11;
    };
    std::vector<Corner> corners;
    for (const Square& s : placed) {
        Corner c{};
        c.at00 = cursor[{s.p, s.q}]++;
        c.at10 = cursor[{s.p + 1, s.q}]++;
        c.at01 = cursor[{s.p, s.q + 1}]++;
        c.at11 = cursor[{s.p + 1, s.q + 1}]++;
        corners.push_back(c);
    }
    std::map<Spot, Matrix> dI, dII;
    auto block = [&](std::map<Spot, Matrix>& store, int p, int q, int dp, int dq) -> Matrix& {
        Spot key{p, q};
        auto it = store.find(key);
        if (it == store.end())
            it = store.emplace(key, Matrix(L.dim(p + dp, q + dq), L.dim(p, q))).first;
        return it->second;
    };
    for (std::size_t si = 0; si < placed.size(); ++si) {
        const Square& s = placed[si];
        const Corner& c = corners[si];
        // dI edges with +a, dII bottom +b, dII right -b: the square
        // anticommutes and both squares of differentials vanish.
        block(dI, s.p, s.q, 1, 0).at(c.at10, c.at00) = s.a;
        block(dI, s.p, s.q + 1, 1, 0).at(c.at11, c.at01) = s.a;
        block(dII, s.p, s.q, 0, 1).at(c.at01, c.at00) = s.b;
        block(dII, s.p + 1, s.q, 0, 1).at(c.at11, c.at10) = -s.b;
    }
    for (auto& [spot, m] : dI) L.set_dI(spot.first, spot.second, std::move(m));
    for (auto& [spot, m] : dII) L.set_dII(spot.first, spot.second, std::move(m));
    L.validate();
    return L;
}

Bicomplex zero_differential_random(XorShift64& rng, std::size_t max_dim) {
    Bicomplex L;
    int P = static_cast<int>(rng.range(1, 3));
    int Q = static_cast<int>(rng.range(1, 3));
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) L.set_dim(p, q, rng.below(max_dim + 1));
    L.validate();
    return L;
}

}  // namespace

Bicomplex random_bicomplex(std::uint64_t seed, std::size_t max_dim) {
    XorShift64 rng(seed * 0x2545f4914f6cdd1dULL + 1);
    switch (rng.below(4)) {
        case 0:
            return zero_differential_random(rng, max_dim);
        case 1:
        case 2:
            return checkerboard_random(rng, max_dim);
        default:
            return anticommuting_squares_random(rng, max_dim);
    }
}

}  // namespace cech
