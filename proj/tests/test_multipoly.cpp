#include <doctest.h>

#include <random>

#include "pflat/multipoly.hpp"

using namespace pflat;

namespace {

MultiPoly random_poly(std::mt19937& rng, int nvars, int max_degree, int terms) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3), deg(0, max_degree);
    MultiPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(nvars, 0);
        int budget = deg(rng);
        std::uniform_int_distribution<int> var(0, nvars - 1);
        for (int d = 0; d < budget; ++d) m[var(rng)] += 1;
        p.add_term(std::move(m), Rational(num(rng), den(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("zero polynomial has empty terms and no degree") {
    MultiPoly z(3);
    CHECK(z.is_zero());
    CHECK_FALSE(z.degree().has_value());
    MultiPoly x = MultiPoly::variable(3, 0);
    CHECK((x - x).is_zero());
    CHECK_FALSE((x - x).degree().has_value());
}

TEST_CASE("arithmetic and degree of products over an integral domain") {
    std::mt19937 rng(2024);
    for (int t = 0; t < 50; ++t) {
        MultiPoly a = random_poly(rng, 4, 3, 5);
        MultiPoly b = random_poly(rng, 4, 3, 5);
        MultiPoly c = random_poly(rng, 4, 2, 4);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero() && !b.is_zero())
            CHECK(*(a * b).degree() == *a.degree() + *b.degree());
    }
}

TEST_CASE("graded-lex leading term") {
    // p = x1*x2 + x3^2 + x1: leading term in grlex is x1*x2 (degree 2,
    // larger exponent on the earlier variable than x3^2).
    MultiPoly p(3);
    p.add_term({1, 1, 0}, Rational(1));
    p.add_term({0, 0, 2}, Rational(1));
    p.add_term({1, 0, 0}, Rational(1));
    CHECK(p.leading().first == Monomial{1, 1, 0});
    CHECK(*p.degree() == 2);
}

TEST_CASE("substitution and evaluation agree") {
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        MultiPoly p = random_poly(rng, 3, 3, 6);
        std::vector<Rational> point = {Rational(1, 2), Rational(-2), Rational(3)};
        Rational direct = p.eval(point);
        MultiPoly s = p.substitute(0, point[0]).substitute(1, point[1]).substitute(2, point[2]);
        CHECK(s.constant_term() == direct);
        CHECK((s - MultiPoly::constant(3, direct)).is_zero());
    }
}

TEST_CASE("exact division by random factors") {
    std::mt19937 rng(31);
    for (int t = 0; t < 40; ++t) {
        MultiPoly a = random_poly(rng, 3, 2, 4);
        MultiPoly b = random_poly(rng, 3, 2, 4);
        if (b.is_zero()) continue;
        MultiPoly prod = a * b;
        auto q = prod.try_divide(b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
    }
    MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    CHECK_FALSE((x * x + y * y).try_divide(x + y).has_value());
}

TEST_CASE("serialization order is graded-lex with leading term first") {
    MultiPoly p(2);
    p.add_term({0, 0}, Rational(7));
    p.add_term({2, 0}, Rational(1));
    p.add_term({1, 1}, Rational(-3));
    p.add_term({0, 1}, Rational(2));
    // grlex ascending inside the map: 7 < 2x2 < x1x2 < x1^2; leading = x1^2.
    CHECK(p.leading().first == Monomial{2, 0});
    CHECK(p.str() == "x1^2 - 3*x1*x2 + 2*x2 + 7");
}
