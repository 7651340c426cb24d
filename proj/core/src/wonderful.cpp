#include "cech/wonderful.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cech {

Matrix RootSystemData::reflection(std::size_t i) const {
    Matrix m = Matrix::identity(rank);
    for (std::size_t j = 0; j < rank; ++j) m.at(j, i) -= Rat(cartan[j][i]);
    // Row j now holds the coefficients of the image of u_j: u_j - a_{ji} u_i.
    return m;
}

RootSystemData root_system_A1() { return RootSystemData{1, {{2}}, "A1"}; }
RootSystemData root_system_A2() { return RootSystemData{2, {{2, -1}, {-1, 2}}, "A2"}; }
RootSystemData root_system_B2() { return RootSystemData{2, {{2, -1}, {-2, 2}}, "B2"}; }

RootSystemData root_system_by_name(const std::string& name) {
    if (name == "A1") return root_system_A1();
    if (name == "A2") return root_system_A2();
    if (name == "B2") return root_system_B2();
    throw ParseError("unknown root system type '" + name + "' (built in: A1, A2, B2)");
}

RootSystemData root_system_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("root system file: ") + e.what());
    }
    RootSystemData r;
    r.rank = j.at("rank").get<std::size_t>();
    r.cartan = j.at("cartan").get<std::vector<std::vector<long>>>();
    if (r.rank == 0 || r.rank > 3)
        throw ParseError("root system rank must be between 1 and 3 (desk scale)");
    if (r.cartan.size() != r.rank) throw ParseError("cartan matrix shape mismatch");
    for (const auto& row : r.cartan) {
        if (row.size() != r.rank) throw ParseError("cartan matrix shape mismatch");
    }
    for (std::size_t i = 0; i < r.rank; ++i)
        if (r.cartan[i][i] != 2) throw ParseError("cartan diagonal entries must equal 2");
    return r;
}

RootSystemData load_root_system_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open root system file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return root_system_from_json_text(buf.str());
}

namespace {

struct MatrixLess {
    bool operator()(const Matrix& a, const Matrix& b) const {
        if (a.rows() != b.rows()) return a.rows() < b.rows();
        if (a.cols() != b.cols()) return a.cols() < b.cols();
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (a.at(i, j) < b.at(i, j)) return true;
                if (b.at(i, j) < a.at(i, j)) return false;
            }
        return false;
    }
};

}  // namespace

std::vector<Matrix> matrix_group_closure(const std::vector<Matrix>& generators, std::size_t cap) {
    if (generators.empty()) return {};
    std::size_t n = generators[0].rows();
    std::set<Matrix, MatrixLess> seen;
    std::vector<Matrix> queue{Matrix::identity(n)};
    seen.insert(queue[0]);
    for (std::size_t at = 0; at < queue.size(); ++at) {
        for (const Matrix& g : generators) {
            Matrix next = queue[at] * g;
            if (seen.insert(next).second) {
                queue.push_back(std::move(next));
                if (queue.size() > cap)
                    throw NonFiniteClosure("group closure exceeded the iteration cap");
            }
        }
    }
    return queue;
}

std::vector<Matrix> weyl_group(const RootSystemData& r) {
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < r.rank; ++i) gens.push_back(r.reflection(i));
    return matrix_group_closure(gens);
}

namespace {

// Substitution images of l variables under the matrix (rows = images).
std::vector<Polynomial> substitution_images(const Matrix& m) {
    std::size_t n = m.rows();
    std::vector<Polynomial> images;
    for (std::size_t j = 0; j < n; ++j) {
        Polynomial img(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (m.at(j, k) != 0) {
                Polynomial::Exps e(n, 0);
                e[k] = 1;
                img.add_term(e, m.at(j, k));
            }
        }
        images.push_back(std::move(img));
    }
    return images;
}

std::vector<Polynomial::Exps> monomials_of_degree(std::size_t nvars, int degree) {
    std::vector<Polynomial::Exps> out;
    Polynomial::Exps current(nvars, 0);
    // Lexicographic enumeration of compositions of `degree` into nvars parts.
    std::function<void(std::size_t, int)> rec = [&](std::size_t at, int remaining) {
        if (at + 1 == nvars) {
            current[at] = remaining;
            out.push_back(current);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            current[at] = k;
            rec(at + 1, remaining - k);
        }
    };
    if (nvars == 0) return out;
    rec(0, degree);
    return out;
}

Vec poly_coords(const Polynomial& p, const std::vector<Polynomial::Exps>& monomials) {
    Vec v(monomials.size(), Rat(0));
    for (std::size_t i = 0; i < monomials.size(); ++i) v[i] = p.coeff(monomials[i]);
    // All terms must be accounted for.
    std::size_t nonzero = 0;
    for (const Rat& c : v)
        if (c != 0) ++nonzero;
    if (nonzero != p.terms().size())
        throw DimensionMismatch("poly_coords: polynomial has terms outside the monomial list");
    return v;
}

Polynomial poly_from_coords(std::size_t nvars, const Vec& v,
                            const std::vector<Polynomial::Exps>& monomials) {
    Polynomial p(nvars);
    for (std::size_t i = 0; i < monomials.size(); ++i)
        if (v[i] != 0) p.add_term(monomials[i], v[i]);
    return p;
}

}  // namespace

std::vector<Polynomial> invariant_basis(const RootSystemData& r,
                                        const std::vector<std::size_t>& subgroup_generators,
                                        int degree) {
    std::size_t l = r.rank;
    std::vector<Matrix> gens;
    for (std::size_t i : subgroup_generators) {
        if (i >= l) throw IndexOutOfRange("invariant_basis: generator index out of range");
        gens.push_back(r.reflection(i));
    }
    std::vector<Matrix> group =
        gens.empty() ? std::vector<Matrix>{Matrix::identity(l)} : matrix_group_closure(gens);
    std::vector<std::vector<Polynomial>> images;
    for (const Matrix& w : group) images.push_back(substitution_images(w));

    std::vector<Polynomial::Exps> monomials = monomials_of_degree(l, degree);
    SpanBuilder span(monomials.size());
    std::vector<Polynomial> basis;
    Rat inv_order(1, static_cast<unsigned long>(group.size()));
    for (const auto& mono : monomials) {
        Polynomial m = Polynomial::monomial(l, mono, Rat(1));
        Polynomial avg(l);
        for (const auto& img : images) avg = avg + m.substitute(img);
        avg = avg * inv_order;
        if (avg.is_zero()) continue;
        Vec coords = poly_coords(avg, monomials);
        if (span.insert(coords)) basis.push_back(std::move(avg));
    }
    return basis;
}

std::vector<std::string> uv_names(std::size_t rank) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= rank; ++i) names.push_back("u" + std::to_string(i));
    for (std::size_t i = 1; i <= rank; ++i) names.push_back("v" + std::to_string(i));
    return names;
}

std::vector<std::string> xy_names(std::size_t rank) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= rank; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= rank; ++i) names.push_back("y" + std::to_string(i));
    return names;
}

Polynomial uv_to_xy(const Polynomial& p, std::size_t rank) {
    // u_i = (x_i + y_i)/2, v_i = (y_i - x_i)/2.
    std::size_t n = 2 * rank;
    if (p.nvars() != n) throw DimensionMismatch("uv_to_xy: wrong variable count");
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < rank; ++i) {
        Polynomial img(n);
        Polynomial::Exps ex(n, 0), ey(n, 0);
        ex[i] = 1;
        ey[rank + i] = 1;
        img.add_term(ex, Rat(1, 2));
        img.add_term(ey, Rat(1, 2));
        images.push_back(std::move(img));
    }
    for (std::size_t i = 0; i < rank; ++i) {
        Polynomial img(n);
        Polynomial::Exps ex(n, 0), ey(n, 0);
        ex[i] = 1;
        ey[rank + i] = 1;
        img.add_term(ey, Rat(1, 2));
        img.add_term(ex, Rat(-1, 2));
        images.push_back(std::move(img));
    }
    return p.substitute(images);
}

Polynomial xy_to_uv(const Polynomial& p, std::size_t rank) {
    // x_i = u_i - v_i, y_i = u_i + v_i.
    std::size_t n = 2 * rank;
    if (p.nvars() != n) throw DimensionMismatch("xy_to_uv: wrong variable count");
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < rank; ++i) {
        Polynomial img(n);
        Polynomial::Exps eu(n, 0), ev(n, 0);
        eu[i] = 1;
        ev[rank + i] = 1;
        img.add_term(eu, Rat(1));
        img.add_term(ev, Rat(-1));
        images.push_back(std::move(img));
    }
    for (std::size_t i = 0; i < rank; ++i) {
        Polynomial img(n);
        Polynomial::Exps eu(n, 0), ev(n, 0);
        eu[i] = 1;
        ev[rank + i] = 1;
        img.add_term(eu, Rat(1));
        img.add_term(ev, Rat(1));
        images.push_back(std::move(img));
    }
    return p.substitute(images);
}

namespace {

bool is_weyl_invariant(const Polynomial& p, const RootSystemData& r) {
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (!(p.substitute(substitution_images(r.reflection(i))) == p)) return false;
    }
    return true;
}

}  // namespace

Polynomial beta(const Polynomial& p, const RootSystemData& r) {
    std::size_t l = r.rank;
    if (p.nvars() != l) throw DimensionMismatch("beta: p must live in the l u-variables");
    if (!p.is_homogeneous()) throw NotHomogeneous("beta: p must be homogeneous");
    if (!is_weyl_invariant(p, r)) throw NotInvariant("beta: p must be W-invariant");
    int d = std::max(p.degree(), 0);
    std::size_t n = 2 * l;
    // Substitute into the xy variables.
    std::vector<Polynomial> plus, minus;
    for (std::size_t i = 0; i < l; ++i) {
        Polynomial xp(n), xm(n);
        Polynomial::Exps ex(n, 0), ey(n, 0);
        ex[i] = 1;
        ey[l + i] = 1;
        xp.add_term(ex, Rat(1));
        xp.add_term(ey, Rat(1));
        xm.add_term(ex, Rat(1));
        xm.add_term(ey, Rat(-1));
        plus.push_back(std::move(xp));
        minus.push_back(std::move(xm));
    }
    Polynomial b_xy = p.substitute(plus);
    Polynomial alt = p.substitute(minus);
    b_xy = (d % 2 == 0) ? b_xy - alt : b_xy + alt;
    return xy_to_uv(b_xy, l);
}

std::vector<Polynomial> decompose_beta(const Polynomial& b, const RootSystemData& r) {
    std::size_t l = r.rank;
    std::size_t n = 2 * l;
    if (b.nvars() != n) throw DimensionMismatch("decompose_beta: expected a uv polynomial");
    Polynomial rest = uv_to_xy(b, l);
    std::vector<Polynomial> f(l, Polynomial(n));
    for (std::size_t k = 0; k < l; ++k) {
        Polynomial taken(n), remaining(n);
        for (const auto& [e, c] : rest.terms()) {
            if (e[k] > 0) {
                Polynomial::Exps q = e;
                q[k] -= 1;
                taken.add_term(q, c);
            } else {
                remaining.add_term(e, c);
            }
        }
        f[k] = xy_to_uv(taken, l);
        rest = std::move(remaining);
    }
    if (!rest.is_zero())
        throw NotDivisible("decompose_beta: input has a term with no x factor");
    return f;
}

std::vector<Polynomial> a_lambda_span(const RootSystemData& r, const std::vector<std::size_t>& Lambda,
                                      int degree) {
    std::size_t l = r.rank;
    std::size_t n = 2 * l;
    std::vector<Polynomial> span_xy;
    // All subsets Gamma of Delta.
    for (std::size_t mask = 0; mask < (1u << l); ++mask) {
        int gamma_deg = 0;
        Polynomial x_gamma = Polynomial::constant(n, Rat(1));
        for (std::size_t i = 0; i < l; ++i)
            if (mask & (1u << i)) {
                ++gamma_deg;
                Polynomial::Exps e(n, 0);
                e[i] = 1;
                x_gamma = x_gamma * Polynomial::monomial(n, e, Rat(1));
            }
        if (gamma_deg > degree) continue;
        // Complement generators: Delta - (Lambda u Gamma).
        std::vector<std::size_t> comp;
        for (std::size_t i = 0; i < l; ++i) {
            bool in_lambda = std::find(Lambda.begin(), Lambda.end(), i) != Lambda.end();
            bool in_gamma = (mask & (1u << i)) != 0;
            if (!in_lambda && !in_gamma) comp.push_back(i);
        }
        for (int qd = 0; qd + gamma_deg <= degree; ++qd) {
            int pd = degree - gamma_deg - qd;
            std::vector<Polynomial> p_basis = invariant_basis(r, comp, pd);
            if (p_basis.empty()) continue;
            for (const auto& qmono : monomials_of_degree(l, qd)) {
                Polynomial q(n);
                Polynomial::Exps e(n, 0);
                for (std::size_t i = 0; i < l; ++i) e[i] = qmono[i];
                q.add_term(e, Rat(1));
                for (const Polynomial& p : p_basis) {
                    // Lift p (in l y-variables) into the xy ring.
                    Polynomial p_xy(n);
                    for (const auto& [pe, pc] : p.terms()) {
                        Polynomial::Exps e2(n, 0);
                        for (std::size_t i = 0; i < l; ++i) e2[l + i] = pe[i];
                        p_xy.add_term(e2, pc);
                    }
                    span_xy.push_back(x_gamma * q * p_xy);
                }
            }
        }
    }
    std::vector<Polynomial> out;
    out.reserve(span_xy.size());
    for (const Polynomial& s : span_xy) out.push_back(xy_to_uv(s, l));
    return out;
}

bool is_in_A(const std::vector<std::size_t>& Lambda, const Polynomial& f, const RootSystemData& r) {
    if (f.is_zero()) return true;
    if (!f.is_homogeneous()) throw NotHomogeneous("is_in_A: f must be homogeneous");
    int degree = f.degree();
    std::vector<Polynomial> span = a_lambda_span(r, Lambda, degree);
    std::vector<Polynomial::Exps> monomials = monomials_of_degree(2 * r.rank, degree);
    SpanBuilder sb(monomials.size());
    for (const Polynomial& s : span) sb.insert(poly_coords(s, monomials));
    return sb.contains(poly_coords(f, monomials));
}

std::vector<Polynomial> wxw_invariants(const RootSystemData& r, int degree) {
    std::size_t l = r.rank;
    std::size_t n = 2 * l;
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < l; ++i) all.push_back(i);
    std::vector<Polynomial> out;
    for (int a = 0; a <= degree; ++a) {
        int b = degree - a;
        std::vector<Polynomial> ua = invariant_basis(r, all, a);
        std::vector<Polynomial> vb = invariant_basis(r, all, b);
        for (const Polynomial& pu : ua)
            for (const Polynomial& pv : vb) {
                Polynomial lift_u(n), lift_v(n);
                for (const auto& [e, c] : pu.terms()) {
                    Polynomial::Exps e2(n, 0);
                    for (std::size_t i = 0; i < l; ++i) e2[i] = e[i];
                    lift_u.add_term(e2, c);
                }
                for (const auto& [e, c] : pv.terms()) {
                    Polynomial::Exps e2(n, 0);
                    for (std::size_t i = 0; i < l; ++i) e2[l + i] = e[i];
                    lift_v.add_term(e2, c);
                }
                out.push_back(lift_u * lift_v);
            }
    }
    return out;
}

namespace {

CokernelPresentation build_cokernel(const RootSystemData& r, int degree_bound, bool equivariant) {
    if (r.rank > 3) throw DegreeBoundTooSmall("cokernel presentations support rank <= 3");
    if (degree_bound < 0) throw DegreeBoundTooSmall("degree bound must be nonnegative");
    std::size_t l = r.rank;
    std::size_t n = 2 * l;
    CokernelPresentation pres;
    pres.rank = l;
    pres.equivariant = equivariant;
    pres.degree_bound = degree_bound;

    for (int D = 0; D <= degree_bound; ++D) {
        CokernelPresentation::DegreeBlock block;
        block.degree = D;
        block.monomials = monomials_of_degree(n, D);
        block.factor_dim = block.monomials.size();
        std::size_t ambient = l * block.factor_dim;

        // Basis of (+)_k A_{{k}} in degree D.
        std::vector<std::vector<Polynomial>> a_spans(l);
        for (std::size_t k = 0; k < l; ++k) a_spans[k] = a_lambda_span(r, {k}, D);
        SpanBuilder sb(ambient);
        for (std::size_t k = 0; k < l; ++k)
            for (const Polynomial& s : a_spans[k]) {
                Vec v(ambient, Rat(0));
                Vec c = poly_coords(s, block.monomials);
                for (std::size_t i = 0; i < block.factor_dim; ++i) v[k * block.factor_dim + i] = c[i];
                if (sb.insert(v)) block.a_span.push_back(std::move(v));
            }

        // Relations: image of (+)_{i<j} A_{ij} in degree D-1 under
        // (f_ij) -> e_j (x_i f) - e_i (x_j f).
        if (D >= 1) {
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = i + 1; j < l; ++j) {
                    std::vector<Polynomial> domain = a_lambda_span(r, {i, j}, D - 1);
                    for (const Polynomial& fpoly : domain) {
                        // x_i = u_i - v_i in uv coordinates.
                        Polynomial xi(n), xj(n);
                        Polynomial::Exps eu(n, 0), ev(n, 0);
                        eu[i] = 1;
                        ev[l + i] = 1;
                        xi.add_term(eu, Rat(1));
                        xi.add_term(ev, Rat(-1));
                        eu = Polynomial::Exps(n, 0);
                        ev = Polynomial::Exps(n, 0);
                        eu[j] = 1;
                        ev[l + j] = 1;
                        xj.add_term(eu, Rat(1));
                        xj.add_term(ev, Rat(-1));
                        Vec rel(ambient, Rat(0));
                        Vec cj = poly_coords(xi * fpoly, block.monomials);
                        Vec ci = poly_coords(xj * fpoly, block.monomials);
                        for (std::size_t m = 0; m < block.factor_dim; ++m) {
                            rel[j * block.factor_dim + m] += cj[m];
                            rel[i * block.factor_dim + m] -= ci[m];
                        }
                        if (!vec_is_zero(rel)) block.relations.push_back(std::move(rel));
                    }
                }
        }

        if (!equivariant) {
            // Ideal of positive-degree WxW invariants, per factor.
            for (int e = 1; e <= D; ++e) {
                std::vector<Polynomial> invs = wxw_invariants(r, e);
                if (invs.empty()) continue;
                for (std::size_t k = 0; k < l; ++k) {
                    std::vector<Polynomial> lower = a_lambda_span(r, {k}, D - e);
                    for (const Polynomial& h : invs)
                        for (const Polynomial& g : lower) {
                            Polynomial prod = h * g;
                            if (prod.is_zero()) continue;
                            Vec rel(ambient, Rat(0));
                            Vec c = poly_coords(prod, block.monomials);
                            for (std::size_t m = 0; m < block.factor_dim; ++m)
                                rel[k * block.factor_dim + m] = c[m];
                            block.relations.push_back(std::move(rel));
                        }
                }
            }
        }

        block.cokernel = Subquotient(ambient, block.a_span, block.relations);
        pres.blocks.push_back(std::move(block));
    }
    return pres;
}

}  // namespace

CokernelPresentation equivariant_cokernel(const RootSystemData& r, int degree_bound) {
    return build_cokernel(r, degree_bound, true);
}

CokernelPresentation nonequivariant_cokernel(const RootSystemData& r, int degree_bound) {
    return build_cokernel(r, degree_bound, false);
}

std::size_t CokernelPresentation::cokernel_dim(int degree) const {
    for (const auto& b : blocks)
        if (b.degree == degree) return b.cokernel.dim();
    throw DegreeBoundTooSmall("degree exceeds the presentation bound");
}

Vec CokernelPresentation::tuple_coords(const std::vector<Polynomial>& tuple, int degree) const {
    const DegreeBlock* block = nullptr;
    for (const auto& b : blocks)
        if (b.degree == degree) block = &b;
    if (!block) throw DegreeBoundTooSmall("degree exceeds the presentation bound");
    if (tuple.size() != rank) throw DimensionMismatch("tuple_coords: expected one entry per root");
    Vec v(rank * block->factor_dim, Rat(0));
    for (std::size_t k = 0; k < rank; ++k) {
        if (tuple[k].is_zero()) continue;
        Vec c = poly_coords(tuple[k], block->monomials);
        for (std::size_t m = 0; m < block->factor_dim; ++m) v[k * block->factor_dim + m] = c[m];
    }
    return v;
}

std::vector<Polynomial> CokernelPresentation::class_tuple(const std::vector<Polynomial>& tuple,
                                                          int degree) const {
    const DegreeBlock* block = nullptr;
    for (const auto& b : blocks)
        if (b.degree == degree) block = &b;
    if (!block) throw DegreeBoundTooSmall("degree exceeds the presentation bound");
    Vec reduced = block->cokernel.class_of(tuple_coords(tuple, degree));
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < rank; ++k) {
        Vec c(block->factor_dim);
        for (std::size_t m = 0; m < block->factor_dim; ++m) c[m] = reduced[k * block->factor_dim + m];
        out.push_back(poly_from_coords(2 * rank, c, block->monomials));
    }
    return out;
}

ResidueResult residue_class(const Polynomial& p, const RootSystemData& r, CokernelMode mode,
                            int degree_bound) {
    ResidueResult result;
    result.input = p;
    if (p.is_zero()) {
        result.beta_poly = Polynomial(2 * r.rank);
        result.f.assign(r.rank, Polynomial(2 * r.rank));
        result.class_rep.assign(r.rank, Polynomial(2 * r.rank));
        result.class_is_zero = true;
        return result;
    }
    int d = p.degree();
    if (r.type_label.size() && r.type_label[0] == 'D' && 2 * d == static_cast<int>(r.rank))
        result.warnings.push_back("hypothesis violated: type D with 2d = l; the class may not "
                                  "represent the residue");
    if (d - 1 > degree_bound)
        throw DegreeBoundTooSmall("residue of a degree-" + std::to_string(d) +
                                  " invariant needs degree bound >= " + std::to_string(d - 1));
    result.beta_poly = beta(p, r);
    result.f = decompose_beta(result.beta_poly, r);
    CokernelPresentation pres = (mode == CokernelMode::equivariant)
                                    ? equivariant_cokernel(r, degree_bound)
                                    : nonequivariant_cokernel(r, degree_bound);
    result.class_rep = pres.class_tuple(result.f, d - 1);
    result.class_is_zero = true;
    for (const Polynomial& c : result.class_rep)
        if (!c.is_zero()) result.class_is_zero = false;
    return result;
}

}  // namespace cech
