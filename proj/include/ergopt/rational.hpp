#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ergopt {

using BigInt = boost::multiprecision::cpp_int;

/**
 * Exact rational number backed by arbitrary-precision integers.
 *
 * Invariants: den >= 1 and gcd(num, den) == 1 (sign lives in num).
 * Points of the unit interval additionally satisfy 0 <= num/den <= 1;
 * use is_point_in_unit() to check before treating a value as a point.
 */
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d);
    Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_point_in_unit() const { return num_ >= 0 && num_ <= den_; }

    /// True iff the value is a unit fraction 1/a with a >= 2 (the set R_1).
    bool is_unit_fraction_ge2() const { return num_ == 1 && den_ >= 2; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational reciprocal() const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    std::strong_ordering operator<=>(const Rational& o) const;

    double to_double() const;

    /// Serializes as "num/den", or "num" when den == 1.
    std::string str() const;

    /// Parses "num/den" or "num" (optionally signed). Throws std::invalid_argument.
    static Rational parse(const std::string& s);

    /// Exact conversion: every finite double is a dyadic rational.
    static Rational from_double(double x);

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

inline Rational operator*(long long k, const Rational& r) { return Rational(k) * r; }

} // namespace ergopt
