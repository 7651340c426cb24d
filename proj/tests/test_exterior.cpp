#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cech/form.hpp"
#include "cech/lie.hpp"
#include "cech/rng.hpp"

using namespace cech;

namespace {

Form gen(std::size_t dim, std::size_t slots, std::uint32_t basis, std::uint32_t slot) {
    return Form::generator(dim, slots, basis, slot);
}

Form random_form(XorShift64& rng, std::size_t dim, std::size_t slots, int degree, int terms) {
    Form f(dim, slots);
    for (int t = 0; t < terms; ++t) {
        MonKey key;
        for (int d = 0; d < degree; ++d)
            key.push_back(Gen{static_cast<std::uint32_t>(rng.below(dim)),
                              static_cast<std::uint32_t>(rng.below(slots))});
        f.add_term(std::move(key), Rat(rng.range(-3, 3)));
    }
    return f;
}

// Shuffle-sum evaluation oracle:
// (a^b)(v_1..v_{p+q}) = p!q!/(p+q)! sum_shuffles sgn * a(..) b(..).
Rat wedge_eval_oracle(const Form& a, const Form& b, const std::vector<Vec>& vs) {
    int p = std::max(a.degree(), 0), q = std::max(b.degree(), 0);
    int n = p + q;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + p, true);
    std::sort(pick.begin(), pick.end());
    Rat total(0);
    // Iterate over all p-subsets (positions of a's arguments).
    std::vector<std::size_t> comb(p);
    std::iota(comb.begin(), comb.end(), 0);
    bool more = true;
    if (p == 0 || p == n) {
        std::vector<Vec> va, vb;
        for (int i = 0; i < p; ++i) va.push_back(vs[i]);
        for (int i = p; i < n; ++i) vb.push_back(vs[i]);
        return evaluate(a, va) * evaluate(b, vb);
    }
    while (more) {
        std::vector<bool> in(n, false);
        for (std::size_t c : comb) in[c] = true;
        std::vector<Vec> va, vb;
        std::vector<std::size_t> order;
        for (std::size_t c : comb) order.push_back(c);
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
            if (!in[i]) order.push_back(i);
        int inv = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j)
                if (order[i] > order[j]) ++inv;
        for (std::size_t c : comb) va.push_back(vs[c]);
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
            if (!in[i]) vb.push_back(vs[i]);
        Rat term = evaluate(a, va) * evaluate(b, vb);
        total += (inv % 2 == 0) ? term : -term;
        int i = p - 1;
        while (i >= 0 && comb[i] == static_cast<std::size_t>(n - (p - i))) --i;
        if (i < 0) {
            more = false;
        } else {
            ++comb[i];
            for (int j = i + 1; j < p; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    Rat fact_p(1), fact_q(1), fact_n(1);
    for (int i = 2; i <= p; ++i) fact_p *= i;
    for (int i = 2; i <= q; ++i) fact_q *= i;
    for (int i = 2; i <= n; ++i) fact_n *= i;
    return total * fact_p * fact_q / fact_n;
}

}  // namespace

TEST_CASE("x^x vanishes") {
    Form x = gen(3, 1, 0, 0);
    CHECK(wedge(x, x).is_zero());
}

TEST_CASE("(x2-x3)^(x1-x3) expands to x2^x1 + x3^x2 + x1^x3") {
    // Slots are 0-based internally; display indices 1..3.
    Form a = gen(3, 3, 0, 1) - gen(3, 3, 0, 2);
    Form b = gen(3, 3, 0, 0) - gen(3, 3, 0, 2);
    Form expected(3, 3);
    expected.add_term({Gen{0, 1}, Gen{0, 0}}, Rat(1));  // x2^x1
    expected.add_term({Gen{0, 2}, Gen{0, 1}}, Rat(1));  // x3^x2
    expected.add_term({Gen{0, 0}, Gen{0, 2}}, Rat(1));  // x1^x3
    CHECK(wedge(a, b) == expected);
    // Bilinear-expansion oracle: expand the product term by term.
    Form oracle(3, 3);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            MonKey key = ka;
            key.insert(key.end(), kb.begin(), kb.end());
            oracle.add_term(key, ca * cb);
        }
    CHECK(wedge(a, b) == oracle);
}

TEST_CASE("degree-0 unit is a wedge identity") {
    Form one = Form::unit(3, 1);
    Form x = gen(3, 1, 0, 0);
    CHECK(wedge(one, x) == x);
    CHECK(wedge(x, one) == x);
}

TEST_CASE("wedge dimension mismatch throws") {
    CHECK_THROWS_AS(wedge(gen(3, 1, 0, 0), gen(3, 2, 0, 0)), DimensionMismatch);
}

TEST_CASE("CE differential on sl2 generators matches the reference values") {
    LieAlgebra g = sl2();
    // d y = 4 x^y, d z = 4 z^x, d x = 2 y^z.
    Form dy = ce_differential(gen(3, 1, 1, 0), g);
    Form dz = ce_differential(gen(3, 1, 2, 0), g);
    Form dx = ce_differential(gen(3, 1, 0, 0), g);
    CHECK(dy == Form::monomial(3, 1, {Gen{0, 0}, Gen{1, 0}}, Rat(4)));
    CHECK(dz == Form::monomial(3, 1, {Gen{2, 0}, Gen{0, 0}}, Rat(4)));
    CHECK(dx == Form::monomial(3, 1, {Gen{1, 0}, Gen{2, 0}}, Rat(2)));
}

TEST_CASE("CE differential of constants vanishes") {
    CHECK(ce_differential(Form::unit(3, 1), sl2()).is_zero());
}

TEST_CASE("d^2 = 0 on all degree-2 generator pairs of sl3") {
    LieAlgebra g = sl3();
    int pairs = 0;
    for (std::uint32_t i = 0; i < 8; ++i)
        for (std::uint32_t j = i + 1; j < 8; ++j) {
            Form w = wedge(gen(8, 1, i, 0), gen(8, 1, j, 0));
            CHECK(ce_differential(ce_differential(w, g), g).is_zero());
            ++pairs;
        }
    CHECK(pairs == 28);
}

TEST_CASE("d^2 = 0 exhaustively on generators and on random forms") {
    for (const LieAlgebra& g : {sl2(), sl3()}) {
        for (std::uint32_t i = 0; i < g.dim(); ++i) {
            Form f = gen(g.dim(), 1, i, 0);
            CHECK(ce_differential(ce_differential(f, g), g).is_zero());
        }
    }
    XorShift64 rng(5);
    LieAlgebra g2 = sl2(), g3 = sl3();
    for (int t = 0; t < 100; ++t) {
        const LieAlgebra& g = (t % 2) ? g3 : g2;
        std::size_t slots = 1 + rng.below(2);
        Form f = random_form(rng, g.dim(), slots, 1 + static_cast<int>(rng.below(3)), 4);
        CHECK(ce_differential(ce_differential(f, g), g).is_zero());
    }
}

TEST_CASE("Leibniz rule on random pairs") {
    XorShift64 rng(17);
    LieAlgebra g = sl3();
    for (int t = 0; t < 40; ++t) {
        int da = 1 + static_cast<int>(rng.below(2));
        Form a = random_form(rng, 8, 1, da, 3);
        Form b = random_form(rng, 8, 1, 1 + static_cast<int>(rng.below(2)), 3);
        Form lhs = ce_differential(wedge(a, b), g);
        Form rhs = wedge(ce_differential(a, g), b) +
                   ((da % 2 == 0) ? wedge(a, ce_differential(b, g))
                                  : -wedge(a, ce_differential(b, g)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("wedge associativity and graded commutativity on random forms") {
    XorShift64 rng(23);
    for (int t = 0; t < 40; ++t) {
        int da = 1 + static_cast<int>(rng.below(2)), db = 1 + static_cast<int>(rng.below(2));
        Form a = random_form(rng, 4, 2, da, 3);
        Form b = random_form(rng, 4, 2, db, 3);
        Form c = random_form(rng, 4, 2, 1, 3);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        Form ba = wedge(b, a);
        CHECK(wedge(a, b) == ((da * db % 2 == 0) ? ba : -ba));
    }
}

TEST_CASE("evaluate uses the half-normalization") {
    // (x^y)(h,e) = 1/2 and (x^y^z)(h,e,f) = 1/6.
    Form xy = wedge(gen(3, 1, 0, 0), gen(3, 1, 1, 0));
    std::vector<Vec> he{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
    CHECK(evaluate(xy, he) == Rat(1, 2));
    Form xyz = wedge(xy, gen(3, 1, 2, 0));
    std::vector<Vec> hef{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    CHECK(evaluate(xyz, hef) == Rat(1, 6));
}

TEST_CASE("evaluate is alternating") {
    Form xy = wedge(gen(3, 1, 0, 0), gen(3, 1, 1, 0));
    Vec v{Rat(2), Rat(3), Rat(-1)};
    CHECK(evaluate(xy, {v, v}) == Rat(0));
    CHECK_THROWS_AS(evaluate(xy, {v}), ArityMismatch);
}

TEST_CASE("evaluate of a wedge agrees with the shuffle oracle") {
    XorShift64 rng(31);
    for (int t = 0; t < 25; ++t) {
        int da = 1 + static_cast<int>(rng.below(2)), db = 1 + static_cast<int>(rng.below(2));
        Form a = random_form(rng, 3, 1, da, 2);
        Form b = random_form(rng, 3, 1, db, 2);
        Form w = wedge(a, b);
        std::vector<Vec> vs;
        for (int i = 0; i < da + db; ++i) {
            Vec v(3);
            for (auto& c : v) c = Rat(rng.range(-2, 2));
            vs.push_back(std::move(v));
        }
        if (w.is_zero()) continue;
        CHECK(evaluate(w, vs) == wedge_eval_oracle(a, b, vs));
    }
}

TEST_CASE("form text syntax round-trips") {
    LieAlgebra g = sl2();
    XorShift64 rng(47);
    for (int t = 0; t < 20; ++t) {
        std::size_t slots = 1 + rng.below(3);
        Form f = random_form(rng, 3, slots, 1 + static_cast<int>(rng.below(3)), 4);
        std::string text = form_to_string(f, g.dual_labels());
        CHECK(parse_form(text, g.dual_labels(), slots) == f);
    }
    CHECK(parse_form("0", g.dual_labels(), 1).is_zero());
    CHECK(form_to_string(Form(3, 1), g.dual_labels()) == "0");
    Form parsed = parse_form("3/2 x1^y2^z1", g.dual_labels(), 2);
    Form expect(3, 2);
    expect.add_term({Gen{0, 0}, Gen{1, 1}, Gen{2, 0}}, Rat(3, 2));
    CHECK(parsed == expect);
}
