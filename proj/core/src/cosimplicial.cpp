#include "cech/cosimplicial.hpp"

#include <algorithm>

namespace cech {

BigradedElement::BigradedElement(int p_, int q_, Form v) : p(p_), q(q_), value(std::move(v)) {
    if (value.slot_count() != static_cast<std::size_t>(p + 1))
        throw DimensionMismatch("BigradedElement: slot_count must be p+1");
    if (!value.is_zero() && value.degree() != q)
        throw DimensionMismatch("BigradedElement: form degree must be q");
}

BigradedElement zero_element(const LieAlgebra& g, int p, int q) {
    return BigradedElement(p, q, Form(g.dim(), p + 1));
}

BigradedElement coface(std::size_t i, const BigradedElement& e) {
    if (i > static_cast<std::size_t>(e.p) + 1) throw IndexOutOfRange("coface index out of range");
    Form out(e.value.space_dim(), e.p + 2);
    for (const auto& [key, coeff] : e.value.terms()) {
        MonKey shifted = key;
        for (Gen& g : shifted)
            if (g.slot >= i) g.slot += 1;
        out.add_term(std::move(shifted), coeff);
    }
    return BigradedElement(e.p + 1, e.q, std::move(out));
}

BigradedElement codegeneracy(std::size_t j, const BigradedElement& e) {
    if (e.p < 1 || j > static_cast<std::size_t>(e.p) - 1)
        throw IndexOutOfRange("codegeneracy index out of range");
    Form out(e.value.space_dim(), e.p);
    for (const auto& [key, coeff] : e.value.terms()) {
        MonKey merged = key;
        for (Gen& g : merged)
            if (g.slot > j) g.slot -= 1;
        out.add_term(std::move(merged), coeff);
    }
    return BigradedElement(e.p - 1, e.q, std::move(out));
}

BigradedElement d_I(const BigradedElement& e) {
    Form acc(e.value.space_dim(), e.p + 2);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(e.p) + 1; ++i) {
        BigradedElement c = coface(i, e);
        acc = (i % 2 == 0) ? acc + c.value : acc - c.value;
    }
    return BigradedElement(e.p + 1, e.q, std::move(acc));
}

BigradedElement d_II(const BigradedElement& e, const LieAlgebra& g) {
    Form d = ce_differential(e.value, g);
    if (e.p % 2 != 0) d = -d;
    return BigradedElement(e.p, e.q + 1, std::move(d));
}

Form sigma_basis_vector(std::size_t dim, int p, std::size_t basis_index, std::size_t s) {
    if (s + 1 > static_cast<std::size_t>(p)) throw IndexOutOfRange("sigma basis slot out of range");
    Form f(dim, p + 1);
    f.add_term({Gen{static_cast<std::uint32_t>(basis_index), static_cast<std::uint32_t>(s)}}, Rat(1));
    f.add_term({Gen{static_cast<std::uint32_t>(basis_index), static_cast<std::uint32_t>(s + 1)}},
               Rat(-1));
    return f;
}

std::vector<Form> sigma_wedge_basis(std::size_t dim, int p, int q) {
    std::vector<Form> gens;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t s = 0; s + 1 <= static_cast<std::size_t>(p); ++s)
            gens.push_back(sigma_basis_vector(dim, p, i, s));
    std::vector<Form> out;
    if (q < 0 || static_cast<std::size_t>(q) > gens.size()) return out;
    if (q == 0) {
        out.push_back(Form::unit(dim, p + 1));
        return out;
    }
    std::vector<std::size_t> idx(q);
    for (int i = 0; i < q; ++i) idx[i] = i;
    while (true) {
        Form w = gens[idx[0]];
        for (int i = 1; i < q; ++i) w = wedge(w, gens[idx[i]]);
        out.push_back(std::move(w));
        int i = q - 1;
        while (i >= 0 && idx[i] == gens.size() - (q - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

bool is_in_sigma(const BigradedElement& e) {
    if (e.value.is_zero()) return true;
    std::vector<Form> basis = sigma_wedge_basis(e.value.space_dim(), e.p, e.q);
    FormIndexer idx;
    for (const Form& b : basis) idx.add(b);
    if (!idx.covers(e.value)) return false;
    Matrix m = idx.matrix_of(basis);
    return in_column_span(m, idx.coords(e.value));
}

void FormIndexer::add(const Form& f) {
    for (const auto& [key, coeff] : f.terms()) {
        if (index_.emplace(key, keys_.size()).second) keys_.push_back(key);
    }
}

bool FormIndexer::covers(const Form& f) const {
    for (const auto& [key, coeff] : f.terms())
        if (!index_.contains(key)) return false;
    return true;
}

Vec FormIndexer::coords(const Form& f) const {
    Vec v(keys_.size(), Rat(0));
    for (const auto& [key, coeff] : f.terms()) {
        auto it = index_.find(key);
        if (it == index_.end()) throw DimensionMismatch("FormIndexer: monomial not indexed");
        v[it->second] = coeff;
    }
    return v;
}

Matrix FormIndexer::matrix_of(const std::vector<Form>& columns) const {
    Matrix m(keys_.size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        Vec c = coords(columns[j]);
        m.set_column(j, c);
    }
    return m;
}

}  // namespace cech
