#include "cech/transgression.hpp"

#include <algorithm>
#include <numeric>

namespace cech {

TensorRep symmetrize(const InvariantPolynomial& p) {
    TensorRep t;
    t.d = std::max(p.degree(), 0);
    std::size_t n = p.poly.nvars();
    for (const auto& [exps, coeff] : p.poly.terms()) {
        std::vector<std::uint32_t> word;
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < exps[i]; ++k) word.push_back(static_cast<std::uint32_t>(i));
        // Multiplicity of each distinct arrangement under full averaging is
        // (prod_i exps[i]!) / d!.
        Rat factor(1);
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 2; k <= exps[i]; ++k) factor *= k;
        for (std::size_t k = 2; k <= word.size(); ++k) factor /= static_cast<unsigned long>(k);
        std::sort(word.begin(), word.end());
        do {
            t.terms[word] += coeff * factor;
        } while (std::next_permutation(word.begin(), word.end()));
    }
    for (auto it = t.terms.begin(); it != t.terms.end();)
        it = (it->second == 0) ? t.terms.erase(it) : std::next(it);
    return t;
}

namespace {

// Extend a 2-slot form to d+1 slots, occupying slots [pos, pos+1].
Form place_on_interval(const Form& column, std::size_t pos, std::size_t total_slots) {
    Form out(column.space_dim(), total_slots);
    for (const auto& [key, coeff] : column.terms()) {
        MonKey shifted = key;
        for (Gen& g : shifted) g.slot += static_cast<std::uint32_t>(pos);
        out.add_term(std::move(shifted), coeff);
    }
    return out;
}

}  // namespace

BigradedElement inverse_alexander_whitney(const TensorRep& t, const LieAlgebra& g) {
    std::size_t n = g.dim();
    int d = t.d;
    Form acc(n, d + 1);
    // Each tensor factor xi embeds into Sigma^1 as xi@0 - xi@1; the shuffle
    // sum places factor r on the slot interval [sigma(r)-1, sigma(r)] and
    // signs the term by sgn(sigma).
    std::vector<Form> embedded(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Form e(n, 2);
        e.add_term({Gen{i, 0}}, Rat(1));
        e.add_term({Gen{i, 1}}, Rat(-1));
        embedded[i] = std::move(e);
    }
    std::vector<std::size_t> perm(d);
    for (const auto& [word, coeff] : t.terms) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int parity = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) ++parity;
            Form term = Form::unit(n, d + 1);
            for (int r = 0; r < d; ++r)
                term = wedge(term, place_on_interval(embedded[word[r]], perm[r], d + 1));
            acc = (parity % 2 == 0) ? acc + term * coeff : acc - term * coeff;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return BigradedElement(d, d, std::move(acc));
}

std::vector<std::size_t> PivotOrder::make(std::size_t ncols) const {
    std::vector<std::size_t> order(ncols);
    std::iota(order.begin(), order.end(), 0);
    switch (kind) {
        case Kind::lex:
            break;
        case Kind::reverse:
            std::reverse(order.begin(), order.end());
            break;
        case Kind::shuffled: {
            std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ULL;
            auto next = [&state]() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                return state;
            };
            for (std::size_t i = ncols; i > 1; --i) std::swap(order[i - 1], order[next() % i]);
            break;
        }
    }
    return order;
}

TransgressionChain solve_recurrence(const BigradedElement& top, const LieAlgebra& g,
                                    const PivotOrder& pivot) {
    int d = top.p;
    if (top.q != d) throw DimensionMismatch("solve_recurrence: top entry must sit at (d,d)");
    if (!top.value.is_zero()) {
        if (!is_in_sigma(top))
            throw UnsolvableSystem("top chain entry does not lie in the Sigma subcomplex");
        if (!d_I(top).value.is_zero())
            throw UnsolvableSystem("top chain entry is not d_I-closed");
    }
    TransgressionChain chain;
    chain.d = d;
    chain.entries.emplace(std::make_pair(d, d), top);
    BigradedElement current = top;
    for (int p = d; p >= 2; --p) {
        int q = 2 * d - p;
        BigradedElement rhs = d_II(current, g);
        std::vector<Form> basis = sigma_wedge_basis(g.dim(), p - 1, q + 1);
        FormIndexer idx;
        std::vector<Form> columns;
        columns.reserve(basis.size());
        for (const Form& b : basis) {
            BigradedElement img = d_I(BigradedElement(p - 1, q + 1, b));
            idx.add(img.value);
            columns.push_back(std::move(img.value));
        }
        idx.add(rhs.value);
        Matrix m = idx.matrix_of(columns);
        std::vector<std::size_t> order = pivot.make(columns.size());
        auto sol = solve(m, idx.coords(rhs.value), &order);
        if (!sol)
            throw UnsolvableSystem("recurrence step at bidegree (" + std::to_string(p - 1) + "," +
                                   std::to_string(q + 1) + ") has no solution");
        Form next(g.dim(), p);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((*sol)[i] != 0) next = next + basis[i] * (*sol)[i];
        current = BigradedElement(p - 1, q + 1, std::move(next));
        chain.entries.emplace(std::make_pair(p - 1, q + 1), current);
    }
    return chain;
}

namespace {

// Express a form on Lambda^q(Sigma^1) through Sigma^1 = g^dual,
// xi@0 - xi@1 |-> xi.
Form read_off_sigma1(const BigradedElement& e, const LieAlgebra& g) {
    if (e.value.is_zero()) return Form(g.dim(), 1);
    if (e.p != 1) throw DimensionMismatch("read_off: entry must have p = 1");
    std::vector<Form> basis = sigma_wedge_basis(g.dim(), 1, e.q);
    FormIndexer idx;
    for (const Form& b : basis) idx.add(b);
    if (!idx.covers(e.value)) throw UnsolvableSystem("read_off: element not in the Sigma subspace");
    auto sol = solve(idx.matrix_of(basis), idx.coords(e.value));
    if (!sol) throw UnsolvableSystem("read_off: element not in the Sigma subspace");
    // Combination r of the Sigma^1 generators corresponds to the same
    // combination of dual generators.
    std::size_t n = g.dim();
    Form out(n, 1);
    std::vector<std::uint32_t> comb(e.q);
    std::iota(comb.begin(), comb.end(), 0);
    std::size_t at = 0;
    if (e.q == 0) {
        if ((*sol)[0] != 0) out.add_term({}, (*sol)[0]);
        return out;
    }
    while (true) {
        if ((*sol)[at] != 0) {
            MonKey key;
            for (std::uint32_t i : comb) key.push_back(Gen{i, 0});
            out.add_term(std::move(key), (*sol)[at]);
        }
        ++at;
        int i = e.q - 1;
        while (i >= 0 && comb[i] == n - (e.q - i)) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < e.q; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

}  // namespace

TransgressionResult transgress(const InvariantPolynomial& p, const LieAlgebra& g,
                               const PivotOrder& pivot) {
    if (!is_invariant(p, g)) throw NotInvariant("polynomial is not invariant");
    TransgressionResult result;
    if (p.poly.is_zero()) {
        result.cls = CohomologyClass{-1, Form(g.dim(), 1)};
        return result;
    }
    int d = p.degree();
    TensorRep tensor = symmetrize(p);
    BigradedElement top = inverse_alexander_whitney(tensor, g);
    result.chain = solve_recurrence(top, g, pivot);
    const BigradedElement& bottom = result.chain.at(1, 2 * d - 1);
    Form rep = read_off_sigma1(bottom, g);
    if (!ce_differential(rep, g).is_zero())
        throw UnsolvableSystem("edge map produced a non-closed representative");
    result.cls = CohomologyClass{2 * d - 1, std::move(rep)};
    return result;
}

CohomologyClass edge_map(const InvariantPolynomial& p, const LieAlgebra& g,
                         const PivotOrder& pivot) {
    return transgress(p, g, pivot).cls;
}

namespace {

std::vector<Form> lambda_basis(const LieAlgebra& g, int q) {
    std::size_t n = g.dim();
    std::vector<Form> out;
    if (q < 0 || static_cast<std::size_t>(q) > n) return out;
    if (q == 0) {
        out.push_back(Form::unit(n, 1));
        return out;
    }
    std::vector<std::uint32_t> comb(q);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        MonKey key;
        for (std::uint32_t i : comb) key.push_back(Gen{i, 0});
        out.push_back(Form::monomial(n, 1, std::move(key), Rat(1)));
        int i = q - 1;
        while (i >= 0 && comb[i] == n - (q - i)) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < q; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

struct CEDegreeData {
    FormIndexer idx;                // over Lambda^q
    std::vector<Vec> cocycles;      // kernel of delta_q
    std::vector<Vec> coboundaries;  // image of delta_{q-1}
};

CEDegreeData ce_degree_data(const LieAlgebra& g, int q) {
    CEDegreeData data;
    std::vector<Form> basis_q = lambda_basis(g, q);
    for (const Form& b : basis_q) data.idx.add(b);
    if (basis_q.empty()) return data;

    // delta_q matrix.
    std::vector<Form> basis_q1 = lambda_basis(g, q + 1);
    FormIndexer idx1;
    for (const Form& b : basis_q1) idx1.add(b);
    std::vector<Form> images;
    images.reserve(basis_q.size());
    for (const Form& b : basis_q) images.push_back(ce_differential(b, g));
    Matrix dq = idx1.size() ? idx1.matrix_of(images) : Matrix(0, basis_q.size());
    data.cocycles = kernel_basis(dq);

    if (q >= 1) {
        std::vector<Form> basis_qm1 = lambda_basis(g, q - 1);
        for (const Form& b : basis_qm1) {
            Form img = ce_differential(b, g);
            if (!img.is_zero()) data.coboundaries.push_back(data.idx.coords(img));
        }
    }
    return data;
}

}  // namespace

std::vector<Form> ce_cohomology(const LieAlgebra& g, int q) {
    CEDegreeData data = ce_degree_data(g, q);
    if (data.idx.size() == 0) return {};
    Subquotient h(data.idx.size(), data.cocycles, data.coboundaries);
    std::vector<Form> reps;
    std::vector<Form> basis = lambda_basis(g, q);
    for (const Vec& v : h.basis()) {
        Form rep(g.dim(), 1);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (v[i] != 0) rep = rep + basis[i] * v[i];
        reps.push_back(std::move(rep));
    }
    return reps;
}

std::size_t ce_betti(const LieAlgebra& g, int q) { return ce_cohomology(g, q).size(); }

bool is_ce_coboundary(const Form& a, const LieAlgebra& g) {
    if (a.is_zero()) return true;
    int q = a.degree();
    CEDegreeData data = ce_degree_data(g, q);
    if (data.coboundaries.empty()) return false;
    Matrix b = Matrix::from_columns(data.idx.size(), data.coboundaries);
    return in_column_span(b, data.idx.coords(a));
}

std::optional<Rat> classes_proportional(const CohomologyClass& c1, const CohomologyClass& c2,
                                        const LieAlgebra& g) {
    const Form& a = c1.representative;
    const Form& b = c2.representative;
    if (a.is_zero() || is_ce_coboundary(a, g)) return Rat(0);
    if (b.is_zero() || is_ce_coboundary(b, g)) return std::nullopt;
    if (a.degree() != b.degree()) return std::nullopt;
    int q = a.degree();
    CEDegreeData data = ce_degree_data(g, q);
    std::vector<Vec> cols;
    cols.push_back(data.idx.coords(b));
    for (const Vec& v : data.coboundaries) cols.push_back(v);
    Matrix m = Matrix::from_columns(data.idx.size(), cols);
    auto sol = solve(m, data.idx.coords(a));
    if (!sol) return std::nullopt;
    return (*sol)[0];
}

}  // namespace cech
