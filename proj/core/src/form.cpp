#include "cech/form.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cech {

namespace {

// Sorts key in place, returns the permutation sign, or 0 on a repeat.
int normalize_key(MonKey& key) {
    int sign = 1;
    for (std::size_t i = 1; i < key.size(); ++i) {
        for (std::size_t j = i; j > 0 && key[j] < key[j - 1]; --j) {
            std::swap(key[j], key[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < key.size(); ++i)
        if (key[i] == key[i - 1]) return 0;
    return sign;
}

}  // namespace

Form Form::unit(std::size_t space_dim, std::size_t slot_count) {
    Form f(space_dim, slot_count);
    f.add_term({}, Rat(1));
    return f;
}

Form Form::generator(std::size_t space_dim, std::size_t slot_count, std::uint32_t basis,
                     std::uint32_t slot) {
    Form f(space_dim, slot_count);
    f.add_term({Gen{basis, slot}}, Rat(1));
    return f;
}

Form Form::monomial(std::size_t space_dim, std::size_t slot_count, MonKey key, Rat coeff) {
    Form f(space_dim, slot_count);
    f.add_term(std::move(key), std::move(coeff));
    return f;
}

bool Form::is_homogeneous() const {
    std::size_t d = 0;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (first) {
            d = k.size();
            first = false;
        } else if (k.size() != d) {
            return false;
        }
    }
    return true;
}

int Form::degree() const {
    if (terms_.empty()) return -1;
    if (!is_homogeneous()) throw ArityMismatch("degree of a mixed-degree form");
    return static_cast<int>(terms_.begin()->first.size());
}

void Form::add_term(MonKey key, Rat coeff) {
    if (coeff == 0) return;
    for (const Gen& g : key) {
        if (g.basis >= space_dim_ || g.slot >= slot_count_)
            throw IndexOutOfRange("form generator out of range");
    }
    int sign = normalize_key(key);
    if (sign == 0) return;
    if (sign < 0) coeff = -coeff;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat Form::coeff(const MonKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rat(0) : it->second;
}

Form Form::operator+(const Form& rhs) const {
    if (space_dim_ != rhs.space_dim_ || slot_count_ != rhs.slot_count_)
        throw DimensionMismatch("form sum: space mismatch");
    Form f = *this;
    for (const auto& [k, c] : rhs.terms_) f.add_term(k, c);
    return f;
}

Form Form::operator-(const Form& rhs) const { return *this + (rhs * Rat(-1)); }

Form Form::operator*(const Rat& c) const {
    Form f(space_dim_, slot_count_);
    if (c == 0) return f;
    for (const auto& [k, co] : terms_) f.terms_.emplace(k, co * c);
    return f;
}

Form Form::operator-() const { return *this * Rat(-1); }

Form wedge(const Form& a, const Form& b) {
    if (a.space_dim() != b.space_dim() || a.slot_count() != b.slot_count())
        throw DimensionMismatch("wedge: space mismatch");
    Form f(a.space_dim(), a.slot_count());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            MonKey key = ka;
            key.insert(key.end(), kb.begin(), kb.end());
            f.add_term(std::move(key), ca * cb);
        }
    return f;
}

Form ce_differential(const Form& a, const LieAlgebra& g) {
    if (a.space_dim() != g.dim()) throw DimensionMismatch("ce_differential: dim mismatch");
    std::size_t n = g.dim();
    std::size_t slots = a.slot_count();
    // d on the generator (k, s) in "paper units": sum_{i<j} 2 c[i][j][k] per
    // slot s. Cache the per-generator images.
    std::vector<Form> dgen(n * slots);
    auto gen_image = [&](std::uint32_t k, std::uint32_t s) -> const Form& {
        Form& img = dgen[k * slots + s];
        if (img.space_dim() == 0) {
            img = Form(n, slots);
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = i + 1; j < n; ++j) {
                    const Rat& c = g.c(i, j, k);
                    if (c != 0)
                        img.add_term({Gen{i, s}, Gen{j, s}}, Rat(2 * kCESign) * c);
                }
        }
        return img;
    };
    Form out(n, slots);
    for (const auto& [key, coeff] : a.terms()) {
        for (std::size_t r = 0; r < key.size(); ++r) {
            const Form& img = gen_image(key[r].basis, key[r].slot);
            if (img.is_zero()) continue;
            Rat sign = (r % 2 == 0) ? coeff : -coeff;
            MonKey rest;
            rest.reserve(key.size() - 1);
            for (std::size_t t = 0; t < key.size(); ++t)
                if (t != r) rest.push_back(key[t]);
            for (const auto& [ik, ic] : img.terms()) {
                MonKey full = ik;
                full.insert(full.end(), rest.begin(), rest.end());
                out.add_term(std::move(full), sign * ic);
            }
        }
    }
    return out;
}

namespace {

Rat gen_value(const Gen& g, const Vec& v, std::size_t slots) {
    return v[g.basis * slots + g.slot];
}

}  // namespace

Rat evaluate(const Form& a, const std::vector<Vec>& vectors) {
    int deg = a.degree();
    if (deg < 0) {
        if (!vectors.empty()) throw ArityMismatch("evaluate: zero form takes matching arity");
        return Rat(0);
    }
    if (static_cast<std::size_t>(deg) != vectors.size())
        throw ArityMismatch("evaluate: arity != degree");
    std::size_t expect = a.space_dim() * a.slot_count();
    for (const Vec& v : vectors)
        if (v.size() != expect) throw DimensionMismatch("evaluate: bad vector length");
    if (deg == 0) return a.coeff({});

    // 1/d! sum over permutations of sgn(sigma) prod_r key[r](v_{sigma(r)}).
    std::vector<std::size_t> perm(deg);
    for (int i = 0; i < deg; ++i) perm[i] = i;
    Rat total(0);
    // Iterate permutations with explicit parity tracking.
    std::vector<std::size_t> p = perm;
    std::sort(p.begin(), p.end());
    do {
        int parity = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) ++parity;
        Rat sign = (parity % 2 == 0) ? Rat(1) : Rat(-1);
        for (const auto& [key, coeff] : a.terms()) {
            Rat prod = coeff;
            for (std::size_t r = 0; r < key.size() && prod != 0; ++r)
                prod *= gen_value(key[r], vectors[p[r]], a.slot_count());
            total += sign * prod;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    Rat fact(1);
    for (int i = 2; i <= deg; ++i) fact *= i;
    return total / fact;
}

Form cartan_three_form(const LieAlgebra& g) {
    SymBilinearForm kappa = killing_form(g);
    std::size_t n = g.dim();
    Form eta(n, 1);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            Vec bij = g.bracket_basis(i, j);
            for (std::uint32_t k = j + 1; k < n; ++k) {
                Rat val(0);
                for (std::size_t m = 0; m < n; ++m)
                    if (bij[m] != 0) val += bij[m] * kappa.matrix.at(m, k);
                if (val != 0) eta.add_term({Gen{i, 0}, Gen{j, 0}, Gen{k, 0}}, val);
            }
        }
    return eta;
}

std::string form_to_string(const Form& a, const std::vector<std::string>& dual_labels) {
    if (a.space_dim() != dual_labels.size())
        throw DimensionMismatch("form_to_string: label count mismatch");
    if (a.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, coeff] : a.terms()) {
        if (!first) out << " + ";
        first = false;
        out << coeff.get_str();
        if (!key.empty()) out << " ";
        for (std::size_t r = 0; r < key.size(); ++r) {
            if (r) out << "^";
            out << dual_labels[key[r].basis] << key[r].slot + 1;
        }
    }
    return out.str();
}

Form parse_form(const std::string& text, const std::vector<std::string>& dual_labels,
                std::size_t slot_count) {
    Form f(dual_labels.size(), slot_count);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos < text.size() && text.compare(pos, 1, "0") == 0 && pos + 1 == text.size()) return f;
    bool expect_term = true;
    while (pos < text.size()) {
        skip_ws();
        if (!expect_term) {
            if (text[pos] != '+') throw ParseError("form: expected '+' between terms");
            ++pos;
            skip_ws();
        }
        expect_term = false;
        // coefficient
        std::size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        if (start == pos) throw ParseError("form: expected coefficient");
        Rat coeff = parse_rat(text.substr(start, pos - start));
        skip_ws();
        // optional monomial
        MonKey key;
        while (pos < text.size() && text[pos] != '+') {
            std::size_t lstart = pos;
            while (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_'))
                ++pos;
            std::string label = text.substr(lstart, pos - lstart);
            if (label.empty()) throw ParseError("form: expected generator label");
            std::size_t nstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (nstart == pos) throw ParseError("form: expected slot number after label");
            std::size_t slot = std::stoul(text.substr(nstart, pos - nstart));
            if (slot == 0 || slot > slot_count) throw ParseError("form: slot out of range");
            std::size_t basis = dual_labels.size();
            for (std::size_t i = 0; i < dual_labels.size(); ++i)
                if (dual_labels[i] == label) basis = i;
            if (basis == dual_labels.size()) throw ParseError("form: unknown label '" + label + "'");
            key.push_back(Gen{static_cast<std::uint32_t>(basis), static_cast<std::uint32_t>(slot - 1)});
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip_ws();
                continue;
            }
            break;
        }
        f.add_term(std::move(key), std::move(coeff));
        skip_ws();
    }
    return f;
}

}  // namespace cech
