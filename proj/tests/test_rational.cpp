#include "ergopt/rational.hpp"

#include "ergopt/surd.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ergopt;

TEST_CASE("rational normalization and arithmetic") {
    Rational r(6, -8);
    CHECK(r.num() == -3);
    CHECK(r.den() == 4);
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 7) * Rational(7, 3) == Rational(1));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(-1, 2).abs() == Rational(1, 2));
    CHECK(Rational(5, 3).reciprocal() == Rational(3, 5));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing and serialization") {
    CHECK(Rational::parse("3/7") == Rational(3, 7));
    CHECK(Rational::parse("-2/6") == Rational(-1, 3));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("1.5") == Rational(3, 2));
    CHECK(Rational(3, 7).str() == "3/7");
    CHECK(Rational(4).str() == "4");
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
}

TEST_CASE("to_double is accurate across magnitudes") {
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    // Large coprime numerator/denominator pairs.
    BigInt big1("123456789012345678901234567890123456789");
    BigInt big2("987654321098765432109876543210987654322");
    double q = Rational(big1, big2).to_double();
    CHECK(q == doctest::Approx(0.12499999886093750144).epsilon(1e-14));
    CHECK(Rational(-1, 3).to_double() == doctest::Approx(-1.0 / 3.0));
    CHECK(Rational().to_double() == 0.0);
}

TEST_CASE("from_double is an exact dyadic embedding") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        double x = static_cast<double>(rng() >> 11) * 0x1p-53;
        Rational r = Rational::from_double(x);
        CHECK(r.to_double() == x);
    }
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
    CHECK_THROWS_AS(Rational::from_double(1.0 / 0.0), std::domain_error);
}

TEST_CASE("quadratic field arithmetic and exact signs") {
    BigInt D(5);
    QuadField a(1, 1, 2, D);  // (1 + sqrt5)/2 = golden + 1/2... value ~1.618
    QuadField b(-1, 1, 2, D); // (sqrt5 - 1)/2 ~ 0.618
    CHECK(a.to_double() == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
    CHECK((a - b).to_double() == doctest::Approx(1.0));
    CHECK((a + b).to_double() == doctest::Approx(std::sqrt(5.0)));
    CHECK(a.scaled(Rational(2, 3)).to_double() == doctest::Approx(2.0 * 1.6180339887 / 3.0));

    // Exact comparisons around the golden ratio conjugate.
    CHECK(b.cmp(Rational(0)) > 0);
    CHECK(b.cmp(Rational(1)) < 0);
    CHECK(b.cmp(Rational(618033, 1000000)) > 0);
    CHECK(b.cmp(Rational(618034, 1000000)) < 0);
    CHECK((b - b).sign() == 0);

    // Near-cancellation stays exact in the sign test.
    QuadField tiny = a - Rational(1618033988749894848LL, 1000000000000000000LL);
    CHECK(tiny.sign() > 0);

    CHECK_THROWS_AS(QuadField(1, 1, 2, BigInt(5)) + QuadField(1, 1, 2, BigInt(7)),
                    std::domain_error);
    CHECK_THROWS_AS(QuadField(1, 1, 0, BigInt(5)), std::domain_error);
}

TEST_CASE("surd comparisons agree with floats away from ties") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 200; ++i) {
        BigInt A(1 + static_cast<long long>(rng() % 50));
        BigInt B(1 + static_cast<long long>(rng() % 50));
        BigInt C(1 + static_cast<long long>(rng() % 50));
        QuadraticSurd s(A, B, C);
        long long den = 1 + static_cast<long long>(rng() % 97);
        long long num = static_cast<long long>(rng() % (den + 1));
        Rational r(num, den);
        double gap = s.to_double() - r.to_double();
        if (std::abs(gap) < 1e-9) continue;
        CHECK(s.cmp(r) == (gap > 0 ? 1 : -1));
        // The field element and the surd agree.
        CHECK(s.to_field().cmp(r) == s.cmp(r));
        CHECK(s.to_field().to_double() == doctest::Approx(s.to_double()).epsilon(1e-14));
    }
}
