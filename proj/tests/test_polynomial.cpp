#include <doctest.h>

#include "cech/polynomial.hpp"

using namespace cech;

static const std::vector<std::string> kXYZ{"x", "y", "z"};

TEST_CASE("parse and print round-trip") {
    for (const char* text : {"-x^2 - y*z", "1/2*x*y + 3*z^4", "0", "x", "2/3", "-x + x"}) {
        Polynomial p = Polynomial::parse(text, kXYZ);
        Polynomial again = Polynomial::parse(p.to_string(kXYZ), kXYZ);
        CHECK(again == p);
    }
}

TEST_CASE("parse handles parentheses and rational coefficients") {
    Polynomial p = Polynomial::parse("4*(x + y)", kXYZ);
    Polynomial q = Polynomial::parse("4*x + 4*y", kXYZ);
    CHECK(p == q);
    CHECK(Polynomial::parse("1/2*x^2", kXYZ).coeff({2, 0, 0}) == Rat(1, 2));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(Polynomial::parse("x + w", kXYZ), ParseError);
    CHECK_THROWS_AS(Polynomial::parse("x +", kXYZ), ParseError);
    CHECK_THROWS_AS(Polynomial::parse("x^", kXYZ), ParseError);
}

TEST_CASE("arithmetic and substitution") {
    Polynomial x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1);
    Polynomial p = x * x - y * Rat(2);
    CHECK(p.degree() == 2);
    CHECK(!p.is_homogeneous());
    CHECK(p.homogeneous_part(2) == x * x);
    // substitute x -> x + y, y -> y: (x+y)^2 - 2y.
    std::vector<Polynomial> images{x + y, y, Polynomial::variable(3, 2)};
    Polynomial s = p.substitute(images);
    CHECK(s == x * x + x * y * Rat(2) + y * y - y * Rat(2));
    CHECK(p.evaluate({Rat(3), Rat(1), Rat(0)}) == Rat(7));
}

TEST_CASE("printer uses a deterministic graded order") {
    Polynomial p = Polynomial::parse("z + x^2 + y", kXYZ);
    CHECK(p.to_string(kXYZ) == "y + z + x^2");
}
