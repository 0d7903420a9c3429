#include <doctest.h>

#include <random>

#include "pflat/poly_det.hpp"

using namespace pflat;

namespace {

Mat<MultiPoly> random_linear_matrix(std::mt19937& rng, int size, int nvars) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 2);
    Mat<MultiPoly> m(size, size, MultiPoly(nvars));
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            MultiPoly e = MultiPoly::constant(nvars, Rational(num(rng), den(rng)));
            for (int v = 0; v < nvars; ++v)
                e += MultiPoly::variable(nvars, v, Rational(num(rng), den(rng)));
            m(r, c) = std::move(e);
        }
    return m;
}

} // namespace

TEST_CASE("determinant base cases") {
    Mat<MultiPoly> one(1, 1, MultiPoly(1));
    one(0, 0) = MultiPoly::variable(1, 0);
    CHECK(poly_det(one) == MultiPoly::variable(1, 0));

    // [[x1, x2], [x3, x4]] -> x1 x4 - x2 x3
    Mat<MultiPoly> two(2, 2, MultiPoly(4));
    for (int i = 0; i < 4; ++i) two(i / 2, i % 2) = MultiPoly::variable(4, i);
    MultiPoly expect = MultiPoly::variable(4, 0) * MultiPoly::variable(4, 3) -
                       MultiPoly::variable(4, 1) * MultiPoly::variable(4, 2);
    CHECK(poly_det(two, DetStrategy::Bareiss) == expect);
    CHECK(poly_det(two, DetStrategy::MinorExpansion) == expect);
}

TEST_CASE("bareiss equals minor expansion on random matrices up to 6x6") {
    std::mt19937 rng(4711);
    for (int size = 2; size <= 6; ++size)
        for (int rep = 0; rep < 4; ++rep) {
            Mat<MultiPoly> m = random_linear_matrix(rng, size, size);
            CHECK(poly_det(m, DetStrategy::Bareiss) == poly_det(m, DetStrategy::MinorExpansion));
        }
}

TEST_CASE("determinant with zero pivots needs row swaps") {
    // [[0, x], [y, 0]] -> -x y
    Mat<MultiPoly> m(2, 2, MultiPoly(2));
    m(0, 1) = MultiPoly::variable(2, 0);
    m(1, 0) = MultiPoly::variable(2, 1);
    MultiPoly expect = -(MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1));
    CHECK(poly_det(m, DetStrategy::Bareiss) == expect);
    CHECK(poly_det(m, DetStrategy::MinorExpansion) == expect);

    // Singular matrix
    Mat<MultiPoly> s(2, 2, MultiPoly(2));
    s(0, 0) = MultiPoly::variable(2, 0);
    s(0, 1) = MultiPoly::variable(2, 0);
    s(1, 0) = MultiPoly::variable(2, 1);
    s(1, 1) = MultiPoly::variable(2, 1);
    CHECK(poly_det(s).is_zero());
}

TEST_CASE("size cap") {
    Mat<MultiPoly> m(3, 3, MultiPoly(3));
    for (int i = 0; i < 3; ++i) m(i, i) = MultiPoly::constant(3, Rational(1));
    CHECK_THROWS_AS(poly_det(m, DetStrategy::Bareiss, 2), SizeCapExceeded);
    CHECK(poly_det(m, DetStrategy::Bareiss, 3) == MultiPoly::constant(3, Rational(1)));
}

TEST_CASE("linear factor divisibility") {
    MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    auto [ok1, q1] = linear_factor_divides((x + y) * (x + y), x + y);
    CHECK(ok1);
    CHECK(*q1 == x + y);

    auto [ok2, q2] = linear_factor_divides(x * x + y * y, x + y);
    CHECK_FALSE(ok2);

    // (z - x/2)^2 (z + x/2) divided by (z - x/2); variables (x, y, z).
    MultiPoly x3 = MultiPoly::variable(3, 0), z3 = MultiPoly::variable(3, 2);
    MultiPoly l1 = z3 - Rational(1, 2) * x3;
    MultiPoly l2 = z3 + Rational(1, 2) * x3;
    auto [ok3, q3] = linear_factor_divides(l1 * l1 * l2, l1);
    CHECK(ok3);
    CHECK(*q3 == l1 * l2);

    CHECK_THROWS_AS(linear_factor_divides(x * y, x * y), Error); // degree 2 divisor
}
