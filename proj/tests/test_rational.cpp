#include <doctest.h>

#include <random>

#include "pflat/rational.hpp"

using pflat::BigInt;
using pflat::Rational;

TEST_CASE("rational normalization keeps lowest terms and positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK(Rational(-3, 16).str() == "-3/16");
    CHECK(Rational(5).str() == "5");
}

TEST_CASE("rational arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(a < Rational(1, 2));
    CHECK_THROWS_AS(a / Rational(0), pflat::Error);
}

TEST_CASE("string serialization round-trips losslessly") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<long long> num(-1000000, 1000000);
    std::uniform_int_distribution<long long> den(1, 999983);
    for (int i = 0; i < 200; ++i) {
        Rational x(num(rng), den(rng));
        CHECK(Rational::parse(x.str()) == x);
    }
    CHECK(Rational::parse("-3/16") == Rational(-3, 16));
    CHECK(Rational::parse("5") == Rational(5));
}

TEST_CASE("big values never overflow") {
    Rational x(1, 3);
    Rational acc(1);
    for (int i = 0; i < 40; ++i) acc *= x; // 3^-40
    BigInt p = 1;
    for (int i = 0; i < 40; ++i) p *= 3;
    CHECK(acc == Rational(BigInt(1), p));
    for (int i = 0; i < 40; ++i) acc /= x;
    CHECK(acc == Rational(1));
}

TEST_CASE("rational square roots") {
    Rational r;
    CHECK(pflat::rational_sqrt(Rational(9, 4), r));
    CHECK(r == Rational(3, 2));
    CHECK(pflat::rational_sqrt(Rational(0), r));
    CHECK(r == Rational(0));
    CHECK_FALSE(pflat::rational_sqrt(Rational(2), r));
    CHECK_FALSE(pflat::rational_sqrt(Rational(-1), r));
}
