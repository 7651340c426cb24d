#include <doctest.h>

#include "cech/cosimplicial.hpp"
#include "cech/lie.hpp"
#include "cech/rng.hpp"
#include "cech/transgression.hpp"

using namespace cech;

namespace {

BigradedElement random_element(XorShift64& rng, std::size_t dim, int p, int q, int terms) {
    Form f(dim, p + 1);
    for (int t = 0; t < terms; ++t) {
        MonKey key;
        for (int d = 0; d < q; ++d)
            key.push_back(Gen{static_cast<std::uint32_t>(rng.below(dim)),
                              static_cast<std::uint32_t>(rng.below(p + 1))});
        f.add_term(std::move(key), Rat(rng.range(-3, 3)));
    }
    return BigradedElement(p, q, std::move(f));
}

// (x_{i+1} - x_{j+1}) wedge (y_{i+1} - y_{j+1}) wedge (z_{i+1} - z_{j+1}) on
// the given number of slots, display indices.
Form diff_block(std::size_t slots, std::uint32_t si, std::uint32_t sj) {
    Form acc = Form::unit(3, slots);
    for (std::uint32_t b = 0; b < 3; ++b) {
        Form d = Form::generator(3, slots, b, si) - Form::generator(3, slots, b, sj);
        acc = wedge(acc, d);
    }
    return acc;
}

}  // namespace

TEST_CASE("coface inserts an empty slot") {
    // A degree-0-slot element (m0) goes to (0, m0) under coface 0 and to
    // (m0, 0) under coface 1.
    BigradedElement m0(0, 1, Form::generator(3, 1, 0, 0));
    BigradedElement c0 = coface(0, m0);
    BigradedElement c1 = coface(1, m0);
    CHECK(c0.value == Form::generator(3, 2, 0, 1));
    CHECK(c1.value == Form::generator(3, 2, 0, 0));
    CHECK_THROWS_AS(coface(2, m0), IndexOutOfRange);
}

TEST_CASE("coface of zero is zero") {
    BigradedElement z(1, 2, Form(3, 2));
    CHECK(coface(1, z).value.is_zero());
}

TEST_CASE("cosimplicial coface identities hold for p <= 3") {
    XorShift64 rng(3);
    for (int p = 0; p <= 3; ++p) {
        BigradedElement e = random_element(rng, 3, p, 2, 4);
        for (std::size_t i = 0; i + 1 <= static_cast<std::size_t>(p) + 1; ++i)
            for (std::size_t j = i + 1; j <= static_cast<std::size_t>(p) + 2; ++j) {
                BigradedElement lhs = coface(j, coface(i, e));
                BigradedElement rhs = coface(i, coface(j - 1, e));
                CHECK(lhs.value == rhs.value);
            }
    }
}

TEST_CASE("codegeneracy merges adjacent slots and retracts cofaces") {
    XorShift64 rng(9);
    for (int p = 1; p <= 3; ++p) {
        BigradedElement e = random_element(rng, 3, p, 2, 4);
        for (std::size_t j = 0; j + 1 <= static_cast<std::size_t>(p); ++j) {
            CHECK(codegeneracy(j, coface(j, e)).value == e.value);
            CHECK(codegeneracy(j, coface(j + 1, e)).value == e.value);
        }
    }
}

TEST_CASE("d_I of eta/8 is the paper's three-term expansion") {
    // eta/8 = (x1-x2)^(y1-y2)^(z1-z2) in Lambda^3 Sigma^1.
    Form eta8 = diff_block(2, 0, 1);
    BigradedElement e(1, 3, eta8);
    Form expected = diff_block(3, 0, 1) - diff_block(3, 0, 2) + diff_block(3, 1, 2);
    CHECK(d_I(e).value == expected);
}

TEST_CASE("d_I of zero is zero and d_I^2 = 0 on random elements") {
    LieAlgebra g = sl2();
    CHECK(d_I(zero_element(g, 1, 2)).value.is_zero());
    XorShift64 rng(13);
    for (int t = 0; t < 50; ++t) {
        BigradedElement e = random_element(rng, 3, 1, 2, 4);
        CHECK(d_I(d_I(e)).value.is_zero());
    }
}

TEST_CASE("d_II acts slotwise with the (-1)^p sign") {
    LieAlgebra g = sl2();
    // p = 2: d(y at slot 3) = 4 x3^y3.
    BigradedElement y3(2, 1, Form::generator(3, 3, 1, 2));
    Form expected = Form::monomial(3, 3, {Gen{0, 2}, Gen{1, 2}}, Rat(4));
    CHECK(d_II(y3, g).value == expected);
    // p = 1 flips the sign.
    BigradedElement y2(1, 1, Form::generator(3, 2, 1, 1));
    CHECK(d_II(y2, g).value == Form::monomial(3, 2, {Gen{0, 1}, Gen{1, 1}}, Rat(-4)));
    // Degree-0 constants die.
    BigradedElement one(2, 0, Form::unit(3, 3));
    CHECK(d_II(one, g).value.is_zero());
}

TEST_CASE("d_II of a^{2,2} matches the paper's 18-term display times 4") {
    LieAlgebra g = sl2();
    InvariantPolynomial det(g, sl2_determinant());
    BigradedElement a22 = inverse_alexander_whitney(symmetrize(det), g);
    // The displayed quarter of d_II a^{2,2}, term by term; slots 1..3.
    auto mono = [&](const char* text) { return parse_form(text, g.dual_labels(), 3); };
    Form quarter =
        mono("1 x1^y2^z2") - mono("1 x2^y1^z1") + mono("1 x2^y3^z3") - mono("1 x3^y2^z2") +
        mono("1 x3^y1^z1") - mono("1 x1^y3^z3") + mono("1 z2^x2^y1") - mono("1 z2^x1^y1") +
        mono("1 x1^y1^z3") - mono("1 y1^z3^x3") + mono("1 x3^y3^z2") - mono("1 y3^z2^x2") +
        mono("1 x2^y2^z1") - mono("1 y2^z1^x1") + mono("1 z1^x1^y3") - mono("1 z1^x3^y3") +
        mono("1 z3^x3^y2") - mono("1 z3^x2^y2");
    CHECK(d_II(a22, g).value == quarter * Rat(4));
}

TEST_CASE("the bicomplex identities hold on random elements") {
    LieAlgebra g = sl2();
    XorShift64 rng(21);
    for (int t = 0; t < 30; ++t) {
        int p = static_cast<int>(rng.below(3));
        BigradedElement e = random_element(rng, 3, p, 1 + static_cast<int>(rng.below(2)), 4);
        CHECK(d_II(d_II(e, g), g).value.is_zero());
        Form anti = d_I(d_II(e, g)).value + d_II(d_I(e), g).value;
        CHECK(anti.is_zero());
    }
}

TEST_CASE("is_in_sigma") {
    LieAlgebra g = sl2();
    // x2 - x3 inside C^2 has components summing to zero.
    Form x23 = Form::generator(3, 3, 0, 1) - Form::generator(3, 3, 0, 2);
    CHECK(is_in_sigma(BigradedElement(2, 1, x23)));
    CHECK_FALSE(is_in_sigma(BigradedElement(2, 1, Form::generator(3, 3, 0, 0))));
    InvariantPolynomial det(g, sl2_determinant());
    BigradedElement a22 = inverse_alexander_whitney(symmetrize(det), g);
    CHECK(is_in_sigma(a22));
}

TEST_CASE("cofaces preserve the Sigma subspace") {
    XorShift64 rng(29);
    for (int t = 0; t < 20; ++t) {
        int p = 1 + static_cast<int>(rng.below(2));
        int q = 1 + static_cast<int>(rng.below(2));
        std::vector<Form> basis = sigma_wedge_basis(3, p, q);
        if (basis.empty()) continue;
        Form f(3, p + 1);
        for (const Form& b : basis)
            if (rng.below(2)) f = f + b * Rat(rng.range(-2, 2));
        BigradedElement e(p, q, std::move(f));
        REQUIRE(is_in_sigma(e));
        for (std::size_t i = 0; i <= static_cast<std::size_t>(p) + 1; ++i)
            CHECK(is_in_sigma(coface(i, e)));
    }
}
