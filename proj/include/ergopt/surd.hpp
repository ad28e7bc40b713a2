#pragma once

#include "ergopt/rational.hpp"

#include <string>

namespace ergopt {

/**
 * Element of the real quadratic field Q(sqrt(disc)): (a + b*sqrt(disc)) / c.
 *
 * Invariants: c >= 1, gcd(a, b, c) == 1, disc >= 0 (disc == 0 encodes a plain
 * rational). All arithmetic stays within a fixed disc; mixing discs throws.
 * Exact sign tests never touch floating point.
 */
class QuadField {
public:
    QuadField() : a_(0), b_(0), c_(1), disc_(0) {}
    QuadField(BigInt a, BigInt b, BigInt c, BigInt disc);

    static QuadField from_rational(const Rational& r, const BigInt& disc);

    const BigInt& disc() const { return disc_; }

    QuadField operator+(const QuadField& o) const;
    QuadField operator-(const QuadField& o) const;
    QuadField operator-() const;
    QuadField operator+(const Rational& r) const;
    QuadField operator-(const Rational& r) const;
    QuadField scaled(const Rational& r) const;

    /// Sign of the value: -1, 0, or +1. Exact.
    int sign() const;

    /// Exact three-way comparison with a rational.
    int cmp(const Rational& r) const { return (*this - r).sign(); }

    double to_double() const;
    std::string str() const;

private:
    BigInt a_, b_, c_, disc_;
    void normalize();
    void check_same_disc(const QuadField& o) const;
};

/**
 * The root in (0,1) of A x^2 + B x - C = 0 with A >= 1, B >= 1, C >= 1,
 * packaged with its discriminant B^2 + 4AC. This is the exact form taken by
 * every fixed point of a finite inverse-branch composition.
 */
class QuadraticSurd {
public:
    QuadraticSurd(BigInt A, BigInt B, BigInt C);

    const BigInt& A() const { return A_; }
    const BigInt& B() const { return B_; }
    const BigInt& C() const { return C_; }
    const BigInt& disc() const { return disc_; }

    /// Exact comparison with a rational r: sign of (value - r).
    int cmp(const Rational& r) const;

    /// The value as an exact field element (-B + sqrt(disc)) / (2A).
    QuadField to_field() const;

    double to_double() const { return value_; }
    std::string str() const;

private:
    BigInt A_, B_, C_, disc_;
    double value_;
};

} // namespace ergopt
