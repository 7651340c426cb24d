#include "cech/lie.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cech {

namespace {

std::string triple_str(std::size_t i, std::size_t j, std::size_t k) {
    std::ostringstream s;
    s << "(" << i << "," << j << "," << k << ")";
    return s.str();
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<std::vector<Vec>> structure_constants,
                       std::vector<std::string> labels, std::vector<std::string> dual_labels)
    : dim_(labels.size()), c_(std::move(structure_constants)), labels_(std::move(labels)),
      dual_labels_(std::move(dual_labels)) {
    if (dim_ == 0) throw ParseError("LieAlgebra: empty basis");
    if (c_.size() != dim_) throw DimensionMismatch("structure constants: bad shape");
    for (const auto& row : c_) {
        if (row.size() != dim_) throw DimensionMismatch("structure constants: bad shape");
        for (const auto& v : row)
            if (v.size() != dim_) throw DimensionMismatch("structure constants: bad shape");
    }
    if (dual_labels_.empty()) dual_labels_ = labels_;
    if (dual_labels_.size() != dim_) throw DimensionMismatch("dual labels: bad count");

    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                if (c_[i][j][k] != -c_[j][i][k])
                    throw AntisymmetryViolation("antisymmetry fails at triple " + triple_str(i, j, k));

    // [[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j] = 0
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                Vec total(dim_, Rat(0));
                for (std::size_t m = 0; m < dim_; ++m) {
                    for (std::size_t l = 0; l < dim_; ++l) {
                        total[l] += c_[i][j][m] * c_[m][k][l];
                        total[l] += c_[j][k][m] * c_[m][i][l];
                        total[l] += c_[k][i][m] * c_[m][j][l];
                    }
                }
                if (!vec_is_zero(total))
                    throw JacobiViolation("Jacobi identity fails at triple " + triple_str(i, j, k));
            }
}

Vec LieAlgebra::bracket(const Vec& u, const Vec& v) const {
    if (u.size() != dim_ || v.size() != dim_) throw DimensionMismatch("bracket: bad vector size");
    Vec r(dim_, Rat(0));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (v[j] == 0) continue;
            for (std::size_t k = 0; k < dim_; ++k) r[k] += u[i] * v[j] * c_[i][j][k];
        }
    }
    return r;
}

Matrix LieAlgebra::ad(std::size_t i) const {
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = c_[i][j][k];
    return m;
}

SymBilinearForm::SymBilinearForm(Matrix m) : matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols()) throw DimensionMismatch("bilinear form must be square");
    if (matrix != matrix.transpose()) throw DimensionMismatch("bilinear form must be symmetric");
}

Rat SymBilinearForm::operator()(const Vec& u, const Vec& v) const {
    Vec mv = matrix.apply(v);
    Rat r(0);
    for (std::size_t i = 0; i < u.size(); ++i) r += u[i] * mv[i];
    return r;
}

LieAlgebra lie_algebra_from_structure_constants(const std::vector<std::vector<Vec>>& table,
                                                const std::vector<std::string>& labels,
                                                const std::vector<std::string>& dual_labels) {
    return LieAlgebra(table, labels, dual_labels);
}

LieAlgebra lie_algebra_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("algebra file: ") + e.what());
    }
    if (!j.contains("labels") || !j["labels"].is_array())
        throw ParseError("algebra file: missing \"labels\" array");
    std::vector<std::string> labels = j["labels"].get<std::vector<std::string>>();
    std::vector<std::string> dual_labels;
    if (j.contains("dual_labels")) dual_labels = j["dual_labels"].get<std::vector<std::string>>();
    std::size_t n = labels.size();
    std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n, Vec(n, Rat(0))));
    if (j.contains("brackets")) {
        for (const auto& entry : j["brackets"]) {
            if (!entry.is_array() || entry.size() != 3)
                throw ParseError("algebra file: bracket entries must be [i, j, [[k, coeff], ...]]");
            std::size_t i = entry[0].get<std::size_t>();
            std::size_t jj = entry[1].get<std::size_t>();
            if (i >= n || jj >= n) throw ParseError("algebra file: bracket index out of range");
            for (const auto& term : entry[2]) {
                std::size_t k = term[0].get<std::size_t>();
                if (k >= n) throw ParseError("algebra file: bracket target out of range");
                Rat coeff = term[1].is_string() ? parse_rat(term[1].get<std::string>())
                                                : Rat(term[1].get<long>());
                c[i][jj][k] += coeff;
                c[jj][i][k] -= coeff;  // antisymmetric completion
            }
        }
    }
    return LieAlgebra(std::move(c), std::move(labels), std::move(dual_labels));
}

LieAlgebra load_lie_algebra_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open algebra file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return lie_algebra_from_json_text(buf.str());
}

SymBilinearForm killing_form(const LieAlgebra& g) {
    std::size_t n = g.dim();
    std::vector<Matrix> ads;
    ads.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad(i));
    Matrix kappa(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Matrix prod = ads[i] * ads[j];
            Rat tr(0);
            for (std::size_t k = 0; k < n; ++k) tr += prod.at(k, k);
            kappa.at(i, j) = tr;
            kappa.at(j, i) = tr;
        }
    return SymBilinearForm(std::move(kappa));
}

InvariantPolynomial::InvariantPolynomial(const LieAlgebra& g, Polynomial p) : poly(std::move(p)) {
    if (poly.nvars() != g.dim()) throw DimensionMismatch("polynomial variable count != dim g");
    if (!poly.is_homogeneous()) throw NotHomogeneous("invariant polynomials must be homogeneous");
}

namespace {

Polynomial partial(const Polynomial& p, std::size_t i) {
    Polynomial d(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[i] == 0) continue;
        Polynomial::Exps f = e;
        f[i] -= 1;
        d.add_term(f, c * e[i]);
    }
    return d;
}

}  // namespace

bool is_invariant(const Polynomial& p, const LieAlgebra& g) {
    std::size_t n = g.dim();
    if (p.nvars() != n) throw DimensionMismatch("is_invariant: variable count != dim g");
    // Coadjoint derivation of b_a sends the coordinate x_k to
    // -sum_j c[a][j][k] x_j; extend as a derivation and require zero.
    for (std::size_t a = 0; a < n; ++a) {
        Polynomial action(n);
        for (std::size_t k = 0; k < n; ++k) {
            Polynomial dk = partial(p, k);
            if (dk.is_zero()) continue;
            Polynomial image(n);
            for (std::size_t j = 0; j < n; ++j) {
                if (g.c(a, j, k) != 0) {
                    Polynomial::Exps e(n, 0);
                    e[j] = 1;
                    image.add_term(e, -g.c(a, j, k));
                }
            }
            action = action + dk * image;
        }
        if (!action.is_zero()) return false;
    }
    return true;
}

bool is_invariant(const InvariantPolynomial& p, const LieAlgebra& g) {
    return is_invariant(p.poly, g);
}

namespace {

// Helpers to build fixtures from explicit matrix representations: expand
// commutators of basis matrices in the basis again.
using Mat3 = std::vector<std::vector<Rat>>;

Mat3 zeros(std::size_t n) { return Mat3(n, std::vector<Rat>(n, Rat(0))); }

Mat3 commutator(const Mat3& a, const Mat3& b) {
    std::size_t n = a.size();
    Mat3 r = zeros(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                r[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
    return r;
}

std::vector<std::vector<Vec>> table_from_matrices(const std::vector<Mat3>& basis) {
    std::size_t dim = basis.size();
    std::size_t n = basis[0].size();
    // Expand a matrix in the basis by solving a linear system.
    Matrix coords(n * n, dim);
    for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) coords.at(i * n + j, b) = basis[b][i][j];
    std::vector<std::vector<Vec>> c(dim, std::vector<Vec>(dim, Vec(dim, Rat(0))));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Mat3 com = commutator(basis[i], basis[j]);
            Vec flat(n * n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = com[a][b];
            auto sol = solve(coords, flat);
            if (!sol) throw Error(ErrorKind::Internal, "fixture: commutator not in span");
            c[i][j] = *sol;
        }
    return c;
}

Mat3 unit(std::size_t n, std::size_t i, std::size_t j) {
    Mat3 m = zeros(n);
    m[i][j] = 1;
    return m;
}

}  // namespace

LieAlgebra sl2() {
    // Basis (h, e, f), dual coordinates (x, y, z).
    Mat3 h = zeros(2), e = unit(2, 0, 1), f = unit(2, 1, 0);
    h[0][0] = 1;
    h[1][1] = -1;
    return LieAlgebra(table_from_matrices({h, e, f}), {"h", "e", "f"}, {"x", "y", "z"});
}

LieAlgebra sl3() {
    // Basis (h1, h2, e12, e23, e13, f12, f23, f13); dual coordinates
    // (a, b, p, q, r, s, t, w).
    Mat3 h1 = zeros(3), h2 = zeros(3);
    h1[0][0] = 1;
    h1[1][1] = -1;
    h2[1][1] = 1;
    h2[2][2] = -1;
    std::vector<Mat3> basis = {h1,           h2,           unit(3, 0, 1), unit(3, 1, 2),
                               unit(3, 0, 2), unit(3, 1, 0), unit(3, 2, 1), unit(3, 2, 0)};
    return LieAlgebra(table_from_matrices(basis), {"h1", "h2", "e12", "e23", "e13", "f12", "f23", "f13"},
                      {"a", "b", "p", "q", "r", "s", "t", "w"});
}

LieAlgebra abelian(std::size_t n) {
    std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n, Vec(n, Rat(0))));
    std::vector<std::string> labels, duals;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("e" + std::to_string(i + 1));
        if (n <= 3)
            duals.push_back(std::string(1, "xyz"[i]));
        else
            duals.push_back("v" + std::string(1, static_cast<char>('a' + i)));
    }
    return LieAlgebra(std::move(c), std::move(labels), std::move(duals));
}

Polynomial sl2_determinant() {
    // det of [[x, y], [z, -x]] = -x^2 - y z.
    return Polynomial::parse("-x^2 - y*z", {"x", "y", "z"});
}

Polynomial sl3_casimir() {
    // tr(X^2) for X = a h1 + b h2 + p e12 + q e23 + r e13 + s f12 + t f23 + w f13.
    return Polynomial::parse("2*a^2 + 2*b^2 - 2*a*b + 2*p*s + 2*q*t + 2*r*w",
                             {"a", "b", "p", "q", "r", "s", "t", "w"});
}

}  // namespace cech
