#include "cech/cone.hpp"

#include <algorithm>

#include "cech/rng.hpp"
#include "cech/spectral.hpp"

namespace cech {

std::size_t ChainComplex::dim(int q) const {
    if (q < 0 || q > top()) return 0;
    return dims[q];
}

Matrix ChainComplex::diff(int q) const {
    if (q >= 0 && q < static_cast<int>(d.size())) return d[q];
    return Matrix(dim(q + 1), dim(q));
}

void ChainComplex::validate() const {
    if (!dims.empty() && d.size() + 1 != dims.size())
        throw InvalidDifferentials("chain complex: need one differential per adjacent pair");
    for (int q = 0; q + 1 <= top(); ++q) {
        if (d[q].rows() != dims[q + 1] || d[q].cols() != dims[q])
            throw InvalidDifferentials("chain complex: differential shape mismatch");
        if (q + 2 <= top() && !(d[q + 1] * d[q]).is_zero())
            throw InvalidDifferentials("chain complex: d^2 != 0");
    }
}

bool is_chain_map(const ChainComplex& a, const ChainComplex& b, const std::vector<Matrix>& f) {
    int top = std::max(a.top(), b.top());
    auto f_at = [&](int q) -> Matrix {
        if (q >= 0 && q < static_cast<int>(f.size())) return f[q];
        return Matrix(b.dim(q), a.dim(q));
    };
    for (int q = 0; q <= top; ++q) {
        if (f_at(q).rows() != b.dim(q) || f_at(q).cols() != a.dim(q)) return false;
        Matrix lhs = f_at(q + 1) * a.diff(q);
        Matrix rhs = b.diff(q) * f_at(q);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

Bicomplex tensor_functor(const ChainComplex& A, const ChainComplex& K) {
    A.validate();
    K.validate();
    Bicomplex L;
    for (int q = 0; q <= A.top(); ++q)
        for (int p = 0; p <= K.top(); ++p) L.set_dim(p, q, A.dim(q) * K.dim(p));
    for (int q = 0; q <= A.top(); ++q)
        for (int p = 0; p <= K.top(); ++p) {
            if (L.dim(p, q) == 0) continue;
            if (L.dim(p + 1, q) > 0) L.set_dI(p, q, kron(Matrix::identity(A.dim(q)), K.diff(p)));
            if (L.dim(p, q + 1) > 0) {
                Matrix dII = kron(A.diff(q), Matrix::identity(K.dim(p)));
                if (p % 2 != 0) dII = -dII;
                L.set_dII(p, q, std::move(dII));
            }
        }
    return L;
}

Matrix ConeTriple::f_at(int p, int q) const {
    auto it = f.find({p, q});
    if (it != f.end()) return it->second;
    return Matrix(B.dim(p, q), A.dim(p, q));
}
Matrix ConeTriple::g_at(int p, int q) const {
    auto it = g.find({p, q});
    if (it != g.end()) return it->second;
    return Matrix(C.dim(p, q), B.dim(p, q));
}
Matrix ConeTriple::k_at(int p, int q) const {
    auto it = k.find({p, q});
    if (it != k.end()) return it->second;
    return Matrix(A.dim(p, q + 1), C.dim(p, q));
}

namespace {

// Shift a complex up one degree (a zero space in degree 0). The cone of a
// map of degree->=0 complexes starts in degree -1; working one degree up
// keeps all three bicomplexes in the first quadrant.
ChainComplex shift_up(const ChainComplex& c) {
    ChainComplex s;
    s.dims.push_back(0);
    for (std::size_t d : c.dims) s.dims.push_back(d);
    s.d.push_back(Matrix(c.dim(0), 0));
    for (const Matrix& m : c.d) s.d.push_back(m);
    return s;
}

}  // namespace

ConeTriple build_cone_triple(const ChainComplex& a, const ChainComplex& b,
                             const std::vector<Matrix>& f, const ChainComplex& K) {
    a.validate();
    b.validate();
    K.validate();
    if (!is_chain_map(a, b, f)) throw NotChainMap("build_cone_triple: f is not a chain map");

    ConeTriple t;
    // All grids carry an internal +1 shift in q.
    t.src_a = shift_up(a);
    t.src_b = shift_up(b);
    t.chain_f = f;

    auto f_shifted = [&](int q) -> Matrix {
        // f on the shifted grid: degree q holds the original degree q-1.
        if (q >= 1 && q - 1 < static_cast<int>(f.size())) return f[q - 1];
        return Matrix(t.src_b.dim(q), t.src_a.dim(q));
    };

    // Shifted cone: cone^q = a^q (+) b^{q-1} (the unshifted cone in degree
    // q-1), with d(x,y) = (-d_a x, f x + d_b y).
    ChainComplex cone;
    int top = std::max(a.top() + 1, b.top() + 1);
    for (int q = 0; q <= top; ++q) cone.dims.push_back(a.dim(q) + b.dim(q - 1));
    for (int q = 0; q < top; ++q) {
        std::size_t ra = a.dim(q + 1), rb = b.dim(q);
        std::size_t ca = a.dim(q), cb = b.dim(q - 1);
        Matrix d(ra + rb, ca + cb);
        Matrix da = a.diff(q), db = b.diff(q - 1);
        Matrix fq = (q < static_cast<int>(f.size())) ? f[q] : Matrix(rb, ca);
        for (std::size_t i = 0; i < ra; ++i)
            for (std::size_t j = 0; j < ca; ++j) d.at(i, j) = -da.at(i, j);
        for (std::size_t i = 0; i < rb; ++i) {
            for (std::size_t j = 0; j < ca; ++j) d.at(ra + i, j) = fq.at(i, j);
            for (std::size_t j = 0; j < cb; ++j) d.at(ra + i, ca + j) = db.at(i, j);
        }
        cone.d.push_back(std::move(d));
    }
    t.src_cone = cone;

    t.A = tensor_functor(t.src_a, K);
    t.B = tensor_functor(t.src_b, K);
    t.C = tensor_functor(cone, K);

    for (int q = 0; q <= top; ++q)
        for (int p = 0; p <= K.top(); ++p) {
            std::size_t kp = K.dim(p);
            if (kp == 0) continue;
            if (t.src_a.dim(q) > 0 && t.src_b.dim(q) > 0)
                t.f[{p, q}] = kron(f_shifted(q), Matrix::identity(kp));
            // g: b^{q-1} -> cone^q-part = a^q (+) b^{q-1}, bottom inclusion.
            if (t.src_b.dim(q) > 0 && cone.dim(q) > 0) {
                Matrix inj(cone.dim(q), t.src_b.dim(q));
                for (std::size_t i = 0; i < t.src_b.dim(q); ++i) inj.at(a.dim(q) + i, i) = 1;
                t.g[{p, q}] = kron(inj, Matrix::identity(kp));
            }
            // k: cone^q -> a^q = (shifted A)^{q+1}, projection.
            if (cone.dim(q) > 0 && t.src_a.dim(q + 1) > 0) {
                Matrix proj(t.src_a.dim(q + 1), cone.dim(q));
                for (std::size_t i = 0; i < t.src_a.dim(q + 1); ++i) proj.at(i, i) = 1;
                t.k[{p, q}] = kron(proj, Matrix::identity(kp));
            }
        }
    return t;
}

Subquotient phi_codomain(const ConeTriple& t, int p, int q) {
    std::size_t ambient = t.A.dim(p, q + 1);
    std::vector<Vec> gens = e2_cocycles(t.A, p, q + 1);
    std::vector<Vec> rels = e2_relations(t.A, p, q + 1);
    Matrix kmap = t.k_at(p, q);
    for (const Vec& c : e2_cocycles(t.C, p, q)) {
        Vec img = kmap.apply(c);
        if (!vec_is_zero(img)) rels.push_back(std::move(img));
    }
    return Subquotient(ambient, gens, rels);
}

Vec phi(const ConeTriple& t, int p, int q, const Vec& b_rep) {
    if (b_rep.size() != t.B.dim(p + 1, q)) throw DimensionMismatch("phi: bad representative size");
    if (!vec_is_zero(t.B.dII(p + 1, q).apply(b_rep)))
        throw NotInKernel("phi: representative is not dII-closed");
    {
        Vec dIb = t.B.dI(p + 1, q).apply(b_rep);
        Matrix im = t.B.dII(p + 2, q - 1);
        if (!vec_is_zero(dIb) && (im.cols() == 0 || !in_column_span(im, dIb)))
            throw NotInKernel("phi: representative is not an E2 cocycle");
    }
    Vec gb = t.g_at(p + 1, q).apply(b_rep);
    // Lift: sigma in C^{p,q}, w in C^{p+1,q-1} with
    //   dII sigma = 0,  dI sigma + dII w = g b.
    std::size_t ns = t.C.dim(p, q), nw = t.C.dim(p + 1, q - 1);
    Matrix dII_s = t.C.dII(p, q);
    Matrix dI_s = t.C.dI(p, q);
    Matrix dII_w = t.C.dII(p + 1, q - 1);
    Matrix sys(dII_s.rows() + dI_s.rows(), ns + nw);
    Vec rhs(dII_s.rows() + dI_s.rows(), Rat(0));
    for (std::size_t i = 0; i < dII_s.rows(); ++i)
        for (std::size_t j = 0; j < ns; ++j) sys.at(i, j) = dII_s.at(i, j);
    for (std::size_t i = 0; i < dI_s.rows(); ++i) {
        for (std::size_t j = 0; j < ns; ++j) sys.at(dII_s.rows() + i, j) = dI_s.at(i, j);
        for (std::size_t j = 0; j < nw; ++j) sys.at(dII_s.rows() + i, ns + j) = dII_w.at(i, j);
        rhs[dII_s.rows() + i] = gb[i];
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw NotInKernel("phi: class has nonzero image in E2(C), no lift exists");
    Vec sigma(sol->begin(), sol->begin() + ns);
    Vec ks = t.k_at(p, q).apply(sigma);
    Subquotient target = phi_codomain(t, p, q);
    if (!target.contains(ks)) throw LiftFailed("phi: lifted class escapes the target subquotient");
    return target.class_of(ks);
}

ChainComplex random_chain_complex(std::uint64_t seed, std::size_t max_len, std::size_t max_dim) {
    XorShift64 rng(seed * 0x9e3779b97f4a7c15ULL + 0xda3e39cb94b95bdbULL);
    ChainComplex c;
    std::size_t len = 1 + rng.below(max_len);
    for (std::size_t q = 0; q < len; ++q) c.dims.push_back(rng.below(max_dim + 1));
    for (std::size_t q = 0; q + 1 < len; ++q)
        c.d.push_back(Matrix(c.dims[q + 1], c.dims[q]));
    // Fill with d^2 = 0: each differential drawn from the left annihilator
    // of the previous one.
    for (std::size_t q = 0; q + 1 < len; ++q) {
        std::size_t rows = c.dims[q + 1], cols = c.dims[q];
        if (rows * cols == 0) continue;
        if (q == 0 || c.d[q - 1].is_zero()) {
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) c.d[q].at(i, j) = Rat(rng.range(-2, 2));
            continue;
        }
        std::vector<Vec> null = kernel_basis(c.d[q - 1].transpose());
        for (std::size_t i = 0; i < rows; ++i) {
            Vec row(cols, Rat(0));
            for (const Vec& n : null) {
                Rat coeff(rng.range(-2, 2));
                if (coeff != 0)
                    for (std::size_t j = 0; j < cols; ++j) row[j] += coeff * n[j];
            }
            for (std::size_t j = 0; j < cols; ++j) c.d[q].at(i, j) = row[j];
        }
    }
    c.validate();
    return c;
}

std::vector<Matrix> random_chain_map(std::uint64_t seed, const ChainComplex& a,
                                     const ChainComplex& b) {
    XorShift64 rng(seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL);
    int top = std::max(a.top(), b.top());
    // Unknowns: entries of f_q, q = 0..top.
    std::vector<std::size_t> off;
    std::size_t nvars = 0;
    for (int q = 0; q <= top; ++q) {
        off.push_back(nvars);
        nvars += b.dim(q) * a.dim(q);
    }
    std::size_t nrows = 0;
    std::vector<std::size_t> row_off;
    for (int q = 0; q < top; ++q) {
        row_off.push_back(nrows);
        nrows += b.dim(q + 1) * a.dim(q);
    }
    Matrix sys(nrows, nvars);
    for (int q = 0; q < top; ++q) {
        Matrix da = a.diff(q), db = b.diff(q);
        std::size_t tr = b.dim(q + 1), sc = a.dim(q);
        for (std::size_t i = 0; i < tr; ++i)
            for (std::size_t j = 0; j < sc; ++j) {
                std::size_t row = row_off[q] + i * sc + j;
                // (f_{q+1} da)(i,j) = sum_k f_{q+1}(i,k) da(k,j)
                for (std::size_t k = 0; k < a.dim(q + 1); ++k)
                    if (da.at(k, j) != 0)
                        sys.at(row, off[q + 1] + i * a.dim(q + 1) + k) += da.at(k, j);
                // -(db f_q)(i,j) = -sum_k db(i,k) f_q(k,j)
                for (std::size_t k = 0; k < b.dim(q); ++k)
                    if (db.at(i, k) != 0) sys.at(row, off[q] + k * sc + j) -= db.at(i, k);
            }
    }
    std::vector<Vec> null = kernel_basis(sys);
    Vec choice(nvars, Rat(0));
    for (const Vec& n : null) {
        Rat c(rng.range(-2, 2));
        if (c != 0)
            for (std::size_t j = 0; j < nvars; ++j) choice[j] += c * n[j];
    }
    std::vector<Matrix> f;
    for (int q = 0; q <= top; ++q) {
        Matrix m(b.dim(q), a.dim(q));
        for (std::size_t i = 0; i < b.dim(q); ++i)
            for (std::size_t j = 0; j < a.dim(q); ++j) m.at(i, j) = choice[off[q] + i * a.dim(q) + j];
        f.push_back(std::move(m));
    }
    return f;
}

ConeTriple cone_triple_of_bicomplex_map(const Bicomplex& A, const Bicomplex& B,
                                        const std::map<Spot, Matrix>& f) {
    A.validate();
    B.validate();
    for (int q = 0; q <= A.max_q(); ++q)
        for (int p = 0; p <= A.max_p(); ++p)
            if (q == 0 && A.dim(p, 0) > 0)
                throw NotChainMap("cone_triple_of_bicomplex_map: A must live in rows q >= 1");
    ConeTriple t;
    t.A = A;
    t.B = B;
    auto f_at = [&](int p, int q) -> Matrix {
        auto it = f.find({p, q});
        if (it != f.end()) {
            if (it->second.rows() != B.dim(p, q) || it->second.cols() != A.dim(p, q))
                throw NotChainMap("cone_triple_of_bicomplex_map: f block shape mismatch");
            return it->second;
        }
        return Matrix(B.dim(p, q), A.dim(p, q));
    };
    int P = std::max(A.max_p(), B.max_p());
    int Q = std::max(A.max_q(), B.max_q());
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            if (!(f_at(p + 1, q) * A.dI(p, q) == B.dI(p, q) * f_at(p, q)))
                throw NotChainMap("cone_triple_of_bicomplex_map: f does not commute with dI");
            if (!(f_at(p, q + 1) * A.dII(p, q) == B.dII(p, q) * f_at(p, q)))
                throw NotChainMap("cone_triple_of_bicomplex_map: f does not commute with dII");
            if (B.dim(p, q) * A.dim(p, q) > 0) t.f[{p, q}] = f_at(p, q);
        }

    Bicomplex C;
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) C.set_dim(p, q, A.dim(p, q + 1) + B.dim(p, q));
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            std::size_t ca = A.dim(p, q + 1), cb = B.dim(p, q);
            if (ca + cb == 0) continue;
            if (C.dim(p + 1, q) > 0) {
                Matrix dI(C.dim(p + 1, q), ca + cb);
                Matrix dIA = A.dI(p, q + 1), dIB = B.dI(p, q);
                for (std::size_t i = 0; i < A.dim(p + 1, q + 1); ++i)
                    for (std::size_t j = 0; j < ca; ++j) dI.at(i, j) = dIA.at(i, j);
                for (std::size_t i = 0; i < B.dim(p + 1, q); ++i)
                    for (std::size_t j = 0; j < cb; ++j)
                        dI.at(A.dim(p + 1, q + 1) + i, ca + j) = dIB.at(i, j);
                C.set_dI(p, q, std::move(dI));
            }
            if (C.dim(p, q + 1) > 0) {
                Matrix dII(C.dim(p, q + 1), ca + cb);
                Matrix dIIA = A.dII(p, q + 1), dIIB = B.dII(p, q);
                Matrix fm = f_at(p, q + 1);
                for (std::size_t i = 0; i < A.dim(p, q + 2); ++i)
                    for (std::size_t j = 0; j < ca; ++j) dII.at(i, j) = -dIIA.at(i, j);
                for (std::size_t i = 0; i < B.dim(p, q + 1); ++i) {
                    for (std::size_t j = 0; j < ca; ++j)
                        dII.at(A.dim(p, q + 2) + i, j) = (p % 2 == 0) ? fm.at(i, j) : -fm.at(i, j);
                    for (std::size_t j = 0; j < cb; ++j)
                        dII.at(A.dim(p, q + 2) + i, ca + j) = dIIB.at(i, j);
                }
                C.set_dII(p, q, std::move(dII));
            }
            if (C.dim(p, q) > 0 && B.dim(p, q) > 0) {
                Matrix inj(C.dim(p, q), B.dim(p, q));
                for (std::size_t i = 0; i < B.dim(p, q); ++i) inj.at(A.dim(p, q + 1) + i, i) = 1;
                t.g[{p, q}] = std::move(inj);
            }
            if (C.dim(p, q) > 0 && A.dim(p, q + 1) > 0) {
                Matrix proj(A.dim(p, q + 1), C.dim(p, q));
                for (std::size_t i = 0; i < A.dim(p, q + 1); ++i) proj.at(i, i) = 1;
                t.k[{p, q}] = std::move(proj);
            }
        }
    C.validate();
    t.C = std::move(C);
    return t;
}

std::map<Spot, Matrix> random_bicomplex_map(std::uint64_t seed, const Bicomplex& A,
                                            const Bicomplex& B) {
    XorShift64 rng(seed * 0x9e3779b97f4a7c15ULL + 7);
    int P = std::max(A.max_p(), B.max_p());
    int Q = std::max(A.max_q(), B.max_q());
    std::vector<Spot> spots;
    std::vector<std::size_t> off;
    std::size_t nv = 0;
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            spots.push_back({p, q});
            off.push_back(nv);
            nv += B.dim(p, q) * A.dim(p, q);
        }
    std::map<Spot, Matrix> out;
    if (nv == 0) return out;
    auto vidx = [&](int p, int q, std::size_t i, std::size_t j) {
        for (std::size_t t = 0; t < spots.size(); ++t)
            if (spots[t] == Spot{p, q}) return off[t] + i * A.dim(p, q) + j;
        throw IndexOutOfRange("random_bicomplex_map: block not found");
    };
    std::size_t nr = 0;
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q)
            nr += B.dim(p + 1, q) * A.dim(p, q) + B.dim(p, q + 1) * A.dim(p, q);
    Matrix sys(nr, nv);
    std::size_t row_base = 0;
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            Matrix dIA = A.dI(p, q), dIB = B.dI(p, q), dIIA = A.dII(p, q), dIIB = B.dII(p, q);
            for (std::size_t i = 0; i < B.dim(p + 1, q); ++i)
                for (std::size_t j = 0; j < A.dim(p, q); ++j) {
                    std::size_t row = row_base + i * A.dim(p, q) + j;
                    for (std::size_t k = 0; k < A.dim(p + 1, q); ++k)
                        if (dIA.at(k, j) != 0) sys.at(row, vidx(p + 1, q, i, k)) += dIA.at(k, j);
                    for (std::size_t k = 0; k < B.dim(p, q); ++k)
                        if (dIB.at(i, k) != 0) sys.at(row, vidx(p, q, k, j)) -= dIB.at(i, k);
                }
            row_base += B.dim(p + 1, q) * A.dim(p, q);
            for (std::size_t i = 0; i < B.dim(p, q + 1); ++i)
                for (std::size_t j = 0; j < A.dim(p, q); ++j) {
                    std::size_t row = row_base + i * A.dim(p, q) + j;
                    for (std::size_t k = 0; k < A.dim(p, q + 1); ++k)
                        if (dIIA.at(k, j) != 0) sys.at(row, vidx(p, q + 1, i, k)) += dIIA.at(k, j);
                    for (std::size_t k = 0; k < B.dim(p, q); ++k)
                        if (dIIB.at(i, k) != 0) sys.at(row, vidx(p, q, k, j)) -= dIIB.at(i, k);
                }
            row_base += B.dim(p, q + 1) * A.dim(p, q);
        }
    std::vector<Vec> null = kernel_basis(sys);
    Vec choice(nv, Rat(0));
    for (const Vec& nvec : null) {
        Rat c(rng.range(-2, 2));
        if (c != 0)
            for (std::size_t j = 0; j < nv; ++j) choice[j] += c * nvec[j];
    }
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            if (B.dim(p, q) * A.dim(p, q) == 0) continue;
            Matrix m(B.dim(p, q), A.dim(p, q));
            for (std::size_t i = 0; i < B.dim(p, q); ++i)
                for (std::size_t j = 0; j < A.dim(p, q); ++j) m.at(i, j) = choice[vidx(p, q, i, j)];
            out[{p, q}] = std::move(m);
        }
    return out;
}

namespace {

Matrix random_invertible(XorShift64& rng, std::size_t n) {
    // Product of elementary row operations applied to the identity.
    Matrix m = Matrix::identity(n);
    for (std::size_t step = 0; step < 2 * n; ++step) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        Rat c(rng.range(-2, 2));
        for (std::size_t k = 0; k < n; ++k) m.at(i, k) += c * m.at(j, k);
    }
    return m;
}

}  // namespace

ConeTriple content_cone_triple(std::uint64_t seed, std::size_t max_dim) {
    XorShift64 rng(seed * 0x2545f4914f6cdd1dULL + 3);
    // Obstruction core (rows shifted so A lives in q >= 1):
    //   A: single class z at (0,2); dI z = 0.
    //   B: b at (0,1) with dII b = f(z), and h = dI b a nonzero E1 class
    //      at (1,1) surviving modulo d1 images and f images.
    // Decorated with an extra random dII-pair in B and conjugated by random
    // basis changes at every spot.
    std::size_t za = 1 + rng.below(std::max<std::size_t>(1, max_dim - 2));  // dim of z-space
    Bicomplex A, B;
    A.set_dim(0, 2, za);
    B.set_dim(0, 1, za);
    B.set_dim(0, 2, za + rng.below(2));
    B.set_dim(1, 1, za + rng.below(2));
    B.set_dim(1, 2, rng.below(2));
    // dII_B^{0,1} = injection, dI_B^{0,1} = injection.
    Matrix dII01(B.dim(0, 2), za);
    for (std::size_t i = 0; i < za; ++i) dII01.at(i, i) = 1;
    Matrix dI01(B.dim(1, 1), za);
    for (std::size_t i = 0; i < za; ++i) dI01.at(i, i) = 1;
    B.set_dII(0, 1, dII01);
    B.set_dI(0, 1, dI01);
    // Anticommutation forces dII_B^{1,1} dI_B^{0,1} = -dI_B^{0,2} dII_B^{0,1};
    // keep both zero.
    std::map<Spot, Matrix> f;
    Matrix f02(B.dim(0, 2), za);
    for (std::size_t i = 0; i < za; ++i) f02.at(i, i) = 1;
    f[{0, 2}] = f02;

    // Conjugate by random basis changes.
    std::map<Spot, Matrix> ua, ub, ua_inv, ub_inv;
    auto make_changes = [&](const Bicomplex& L, std::map<Spot, Matrix>& u,
                            std::map<Spot, Matrix>& uinv) {
        for (int p = 0; p <= L.max_p(); ++p)
            for (int q = 0; q <= L.max_q(); ++q) {
                std::size_t d = L.dim(p, q);
                if (d == 0) continue;
                Matrix m = random_invertible(rng, d);
                // Invert by solving m x = e_i column by column.
                Matrix inv(d, d);
                for (std::size_t i = 0; i < d; ++i) {
                    Vec e(d, Rat(0));
                    e[i] = 1;
                    auto sol = solve(m, e);
                    inv.set_column(i, *sol);
                }
                u[{p, q}] = std::move(m);
                uinv[{p, q}] = std::move(inv);
            }
    };
    make_changes(A, ua, ua_inv);
    make_changes(B, ub, ub_inv);
    auto conj = [&](Bicomplex& L, std::map<Spot, Matrix>& u, std::map<Spot, Matrix>& uinv) {
        Bicomplex out;
        for (int p = 0; p <= L.max_p(); ++p)
            for (int q = 0; q <= L.max_q(); ++q) out.set_dim(p, q, L.dim(p, q));
        auto at = [&](std::map<Spot, Matrix>& store, int p, int q, std::size_t d) -> Matrix {
            auto it = store.find({p, q});
            return it == store.end() ? Matrix::identity(d) : it->second;
        };
        for (int p = 0; p <= L.max_p(); ++p)
            for (int q = 0; q <= L.max_q(); ++q) {
                if (L.dim(p, q) == 0) continue;
                if (L.dim(p + 1, q) > 0)
                    out.set_dI(p, q, at(u, p + 1, q, L.dim(p + 1, q)) * L.dI(p, q) *
                                         at(uinv, p, q, L.dim(p, q)));
                if (L.dim(p, q + 1) > 0)
                    out.set_dII(p, q, at(u, p, q + 1, L.dim(p, q + 1)) * L.dII(p, q) *
                                          at(uinv, p, q, L.dim(p, q)));
            }
        L = std::move(out);
    };
    conj(A, ua, ua_inv);
    conj(B, ub, ub_inv);
    std::map<Spot, Matrix> f_conj;
    for (auto& [spot, m] : f) {
        Matrix left = ub.contains(spot) ? ub[spot] : Matrix::identity(m.rows());
        Matrix right = ua_inv.contains(spot) ? ua_inv[spot] : Matrix::identity(m.cols());
        f_conj[spot] = left * m * right;
    }
    return cone_triple_of_bicomplex_map(A, B, f_conj);
}

namespace {

// Total-coordinate matrix of the bigraded map f in degree n.
Matrix total_map(const ConeTriple& t, const TotalComplex& src, const TotalComplex& dst, int n) {
    const TotalDegreeData& s = src.degree(n);
    const TotalDegreeData& d = dst.degree(n);
    Matrix m(d.total_dim, s.total_dim);
    for (std::size_t bs = 0; bs < s.spots.size(); ++bs) {
        Spot spot = s.spots[bs];
        Matrix block = t.f_at(spot.first, spot.second);
        if (block.rows() == 0) continue;
        for (std::size_t bd = 0; bd < d.spots.size(); ++bd) {
            if (d.spots[bd] != spot) continue;
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    m.at(d.offsets[bd] + i, s.offsets[bs] + j) = block.at(i, j);
        }
    }
    return m;
}

}  // namespace

namespace {

void run_lemma_checks(const ConeTriple& t, ConeLemmaTrial& result) {
    TotalComplex tA(t.A), tB(t.B);
    for (int n = 1; n <= tA.max_n(); ++n) {
        int q = n - 1;
        const TotalDegreeData& dataA = tA.degree(n);
        if (dataA.total_dim == 0 || dataA.cocycles.empty()) continue;
        Matrix ftot = total_map(t, tA, tB, n);
        // z in span(cocycles A) with f z in span(F1 cocycles of B) + im D_B.
        const std::vector<Vec>& za = dataA.cocycles;
        std::vector<Vec> fz;
        for (const Vec& z : za) fz.push_back(ftot.apply(z));
        std::vector<Vec> allowed = tB.filtered_cocycles(n, 1);
        for (const Vec& bd : tB.degree(n).boundaries) allowed.push_back(bd);
        std::size_t dimB = tB.degree(n).total_dim;
        Matrix sys(dimB, za.size() + allowed.size());
        for (std::size_t j = 0; j < za.size(); ++j)
            for (std::size_t i = 0; i < dimB; ++i) sys.at(i, j) = fz[j][i];
        for (std::size_t j = 0; j < allowed.size(); ++j)
            for (std::size_t i = 0; i < dimB; ++i) sys.at(i, za.size() + j) = -allowed[j][i];
        std::vector<Vec> candidates;
        for (const Vec& kvec : kernel_basis(sys)) {
            Vec z(dataA.total_dim, Rat(0));
            bool nonzero = false;
            for (std::size_t j = 0; j < za.size(); ++j)
                if (kvec[j] != 0) {
                    nonzero = true;
                    for (std::size_t i = 0; i < dataA.total_dim; ++i) z[i] += kvec[j] * za[j][i];
                }
            if (nonzero && !vec_is_zero(z)) candidates.push_back(std::move(z));
        }
        if (candidates.empty()) continue;
        Subquotient ftilde(dataA.total_dim, candidates, dataA.boundaries);
        Subquotient target = phi_codomain(t, 0, q);
        for (const Vec& x : ftilde.basis()) {
            ++result.cases;
            Vec x0 = tA.component(x, n, {0, q + 1}, t.A.dim(0, q + 1));
            Vec x1 = tA.component(x, n, {1, q}, t.A.dim(1, q));
            Vec u2;
            try {
                u2 = target.class_of(x0);
            } catch (const Error&) {
                result.pass = false;
                result.note = "u2 representative escaped its subquotient";
                continue;
            }
            if (!vec_is_zero(u2)) ++result.nonzero_cases;
            // b with dII b = f(x^{0,q+1}).
            Vec fx0 = t.f_at(0, q + 1).apply(x0);
            auto bsol = solve(t.B.dII(0, q), fx0);
            if (!bsol) {
                result.pass = false;
                result.note = "f(x) not in filtration 1";
                continue;
            }
            Vec beta = vec_sub(t.f_at(1, q).apply(x1), t.B.dI(0, q).apply(*bsol));
            Vec lhs;
            try {
                lhs = phi(t, 0, q, beta);
            } catch (const Error& e) {
                result.pass = false;
                result.note = std::string("phi failed: ") + e.what();
                continue;
            }
            if (lhs != u2) {
                result.pass = false;
                result.note = "phi(v2(f x)) != u2(x)";
            }
        }
    }
}

}  // namespace

ConeLemmaReport verify_cone_lemma(std::uint64_t seed, std::size_t trials, std::size_t max_dim,
                                  long corrupt_trial) {
    ConeLemmaReport report;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::uint64_t ts = seed * 1000003ULL + trial;
        ConeLemmaTrial result;
        result.seed = ts;
        ConeTriple t;
        switch (trial % 3) {
            case 0: {
                result.flavor = "functorial";
                ChainComplex a = random_chain_complex(ts * 4 + 0, 3, max_dim);
                ChainComplex b = random_chain_complex(ts * 4 + 1, 3, max_dim);
                ChainComplex K = random_chain_complex(ts * 4 + 2, 2, 3);
                std::vector<Matrix> f = random_chain_map(ts * 4 + 3, a, b);
                t = build_cone_triple(a, b, f, K);
                break;
            }
            case 1: {
                result.flavor = "general";
                Bicomplex A = random_bicomplex(ts * 4 + 0, std::min<std::size_t>(max_dim, 3));
                // Shift A up one row so the cone stays in the first quadrant.
                Bicomplex As;
                for (int p = 0; p <= A.max_p(); ++p)
                    for (int q = 0; q <= A.max_q(); ++q) As.set_dim(p, q + 1, A.dim(p, q));
                for (int p = 0; p <= A.max_p(); ++p)
                    for (int q = 0; q <= A.max_q(); ++q) {
                        if (A.dim(p, q) == 0) continue;
                        if (A.dim(p + 1, q) > 0) As.set_dI(p, q + 1, A.dI(p, q));
                        if (A.dim(p, q + 1) > 0) As.set_dII(p, q + 1, A.dII(p, q));
                    }
                Bicomplex B = random_bicomplex(ts * 4 + 1, std::min<std::size_t>(max_dim, 3));
                std::map<Spot, Matrix> f = random_bicomplex_map(ts * 4 + 2, As, B);
                t = cone_triple_of_bicomplex_map(As, B, f);
                break;
            }
            default: {
                result.flavor = "content";
                t = content_cone_triple(ts, max_dim);
                break;
            }
        }
        if (corrupt_trial >= 0 && static_cast<std::size_t>(corrupt_trial) == trial) {
            // Negative control: negate g. phi flips sign, so every case with
            // a nonzero class must now fail.
            for (auto& [spot, m] : t.g) m = -m;
            result.note = "corrupted g";
        }
        run_lemma_checks(t, result);
        report.total_cases += result.cases;
        report.nonzero_cases += result.nonzero_cases;
        if (!result.pass) ++report.failures;
        report.trials.push_back(std::move(result));
    }
    return report;
}

}  // namespace cech
