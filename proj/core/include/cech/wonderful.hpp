#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cech/linalg.hpp"
#include "cech/polynomial.hpp"

namespace cech {

/// Root-system input: rank l and Cartan matrix a[i][j]. The Weyl generators
/// act on the u-variables through the reflection action on simple roots,
/// s_i(u_j) = u_j - a[j][i] u_i; v and y carry the same (diagonal) action.
struct RootSystemData {
    std::size_t rank = 0;
    std::vector<std::vector<long>> cartan;
    std::string type_label = "custom";

    /// Substitution matrix of the generator s_i (entry [j][k] = coefficient
    /// of u_k in the image of u_j).
    Matrix reflection(std::size_t i) const;
};

RootSystemData root_system_A1();
RootSystemData root_system_A2();
RootSystemData root_system_B2();
RootSystemData root_system_by_name(const std::string& name);
/// JSON: { "rank": l, "cartan": [[...]] }.
RootSystemData load_root_system_json(const std::string& path);
RootSystemData root_system_from_json_text(const std::string& text);

/// Full element list of the group generated by the given substitution
/// matrices, by closure. Throws NonFiniteClosure past the iteration cap.
std::vector<Matrix> matrix_group_closure(const std::vector<Matrix>& generators,
                                         std::size_t cap = 100000);
/// The Weyl group of r as substitution matrices on l variables.
std::vector<Matrix> weyl_group(const RootSystemData& r);

/// Basis of the invariants of the group generated by the listed simple
/// reflections, in homogeneous degree `degree`, polynomials in l variables.
/// Computed by Reynolds averaging and row reduction.
std::vector<Polynomial> invariant_basis(const RootSystemData& r,
                                        const std::vector<std::size_t>& subgroup_generators,
                                        int degree);

/// Variable order of the ambient polynomial ring: u1..ul, v1..vl.
std::vector<std::string> uv_names(std::size_t rank);
/// x/y views: x_i = u_i - v_i, y_i = u_i + v_i.
std::vector<std::string> xy_names(std::size_t rank);
Polynomial uv_to_xy(const Polynomial& p, std::size_t rank);
Polynomial xy_to_uv(const Polynomial& p, std::size_t rank);

/// beta = p(x+y) - (-1)^d p(x-y) for a W-invariant homogeneous p in the
/// u-variables; returned in the uv coordinates. Satisfies
/// beta = 2^d (p(u) - p(v)).
Polynomial beta(const Polynomial& p, const RootSystemData& r);

/// Ordered greedy extraction: f_k collects the remaining terms divisible by
/// x_k, k ascending; sum_k x_k f_k = b exactly. Throws NotDivisible if a
/// term has no x factor. Input/output in uv coordinates.
std::vector<Polynomial> decompose_beta(const Polynomial& b, const RootSystemData& r);

/// Spanning set of A_Lambda in the given homogeneous degree: elements
/// x^Gamma q(x) p(y) with p invariant under W_{Delta-(Lambda u Gamma)}.
/// Returned in uv coordinates.
std::vector<Polynomial> a_lambda_span(const RootSystemData& r, const std::vector<std::size_t>& Lambda,
                                      int degree);

/// Linear membership test of f in A_Lambda (f homogeneous, uv coordinates).
bool is_in_A(const std::vector<std::size_t>& Lambda, const Polynomial& f, const RootSystemData& r);

/// Degree-graded presentation of (+)_{i<j} A_{ij} -> (+)_k A_k,
/// (f_ij) -> (sum_{i<k} x_i f_ik - sum_{j>k} x_j f_kj), optionally reduced
/// modulo the ideal of positive-degree WxW-invariants.
struct CokernelPresentation {
    std::size_t rank = 0;
    bool equivariant = true;
    int degree_bound = 0;

    struct DegreeBlock {
        int degree = 0;
        std::vector<Polynomial::Exps> monomials;  // uv-monomials of this degree
        std::size_t factor_dim = 0;               // per-factor coordinate size
        std::vector<Vec> a_span;                  // basis of (+)_k A_k
        std::vector<Vec> relations;               // map image (+ ideal, noneq)
        Subquotient cokernel;
    };
    std::vector<DegreeBlock> blocks;

    std::size_t cokernel_dim(int degree) const;
    /// Ambient coordinates of a tuple (f_1,...,f_l) of degree-homogeneous
    /// uv polynomials.
    Vec tuple_coords(const std::vector<Polynomial>& tuple, int degree) const;
    /// Canonical class tuple of (f_1,...,f_l) in the cokernel.
    std::vector<Polynomial> class_tuple(const std::vector<Polynomial>& tuple, int degree) const;
};

CokernelPresentation equivariant_cokernel(const RootSystemData& r, int degree_bound);
CokernelPresentation nonequivariant_cokernel(const RootSystemData& r, int degree_bound);

enum class CokernelMode { equivariant, nonequivariant };

struct ResidueResult {
    Polynomial input;                    // p(u), l vars
    Polynomial beta_poly;                // uv coordinates
    std::vector<Polynomial> f;           // f_k, uv coordinates
    std::vector<Polynomial> class_rep;   // canonical cokernel representative
    bool class_is_zero = false;
    std::vector<std::string> warnings;
};

/// Class of decompose_beta(beta(p)) in the selected cokernel.
ResidueResult residue_class(const Polynomial& p, const RootSystemData& r, CokernelMode mode,
                            int degree_bound);

/// Positive-degree WxW-invariants in homogeneous uv degree e (products of
/// W-invariants in u and in v).
std::vector<Polynomial> wxw_invariants(const RootSystemData& r, int degree);

}  // namespace cech
