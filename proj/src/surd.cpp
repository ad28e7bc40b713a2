#include "ergopt/surd.hpp"

#include <cmath>

namespace ergopt {

namespace {

BigInt gcd3(const BigInt& a, const BigInt& b, const BigInt& c) {
    using boost::multiprecision::gcd;
    return gcd(gcd(a < 0 ? BigInt(-a) : a, b < 0 ? BigInt(-b) : b), c < 0 ? BigInt(-c) : c);
}

// Sign of u + v*sqrt(D), exact. D >= 0.
int sign_linear_in_sqrt(const BigInt& u, const BigInt& v, const BigInt& D) {
    if (v == 0 || D == 0) return u == 0 ? 0 : (u > 0 ? 1 : -1);
    if (u == 0) return v > 0 ? 1 : -1;
    if (u > 0 && v > 0) return 1;
    if (u < 0 && v < 0) return -1;
    // Opposite signs: compare u^2 against v^2 D; the larger magnitude wins.
    BigInt u2 = u * u;
    BigInt v2d = v * v * D;
    if (u2 == v2d) return 0; // sqrt(D) rational; possible only for square D
    bool u_dominates = u2 > v2d;
    return u_dominates ? (u > 0 ? 1 : -1) : (v > 0 ? 1 : -1);
}

double sqrt_bigint(const BigInt& D) {
    // Relative error ~1e-16 for any magnitude: split off an even power of two.
    if (D == 0) return 0.0;
    long bits = static_cast<long>(boost::multiprecision::msb(D));
    long shift = bits > 100 ? (bits - 100) & ~1L : 0;
    double scaled = BigInt(D >> shift).convert_to<double>();
    return std::ldexp(std::sqrt(scaled), static_cast<int>(shift / 2));
}

} // namespace

QuadField::QuadField(BigInt a, BigInt b, BigInt c, BigInt disc)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), disc_(std::move(disc)) {
    if (c_ == 0) throw std::domain_error("QuadField: zero denominator");
    if (disc_ < 0) throw std::domain_error("QuadField: negative discriminant");
    normalize();
}

void QuadField::normalize() {
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    if (disc_ == 0) b_ = 0;
    if (b_ == 0 && a_ == 0) {
        c_ = 1;
        return;
    }
    BigInt g = gcd3(a_, b_, c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

QuadField QuadField::from_rational(const Rational& r, const BigInt& disc) {
    return QuadField(r.num(), 0, r.den(), disc);
}

void QuadField::check_same_disc(const QuadField& o) const {
    // A zero-disc operand is a plain rational and mixes freely.
    if (disc_ != 0 && o.disc_ != 0 && disc_ != o.disc_)
        throw std::domain_error("QuadField: mixed discriminants");
}

QuadField QuadField::operator+(const QuadField& o) const {
    check_same_disc(o);
    BigInt d = disc_ != 0 ? disc_ : o.disc_;
    return QuadField(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d);
}

QuadField QuadField::operator-(const QuadField& o) const { return *this + (-o); }

QuadField QuadField::operator-() const { return QuadField(-a_, -b_, c_, disc_); }

QuadField QuadField::operator+(const Rational& r) const {
    return QuadField(a_ * r.den() + r.num() * c_, b_ * r.den(), c_ * r.den(), disc_);
}

QuadField QuadField::operator-(const Rational& r) const { return *this + (-r); }

QuadField QuadField::scaled(const Rational& r) const {
    return QuadField(a_ * r.num(), b_ * r.num(), c_ * r.den(), disc_);
}

int QuadField::sign() const {
    int s = sign_linear_in_sqrt(a_, b_, disc_);
    return s; // c_ > 0
}

double QuadField::to_double() const {
    double den = c_.convert_to<double>();
    if (b_ == 0) return Rational(a_, c_).to_double();
    return (a_.convert_to<double>() + b_.convert_to<double>() * sqrt_bigint(disc_)) / den;
}

std::string QuadField::str() const {
    return "(" + a_.str() + " + " + b_.str() + "*sqrt(" + disc_.str() + "))/" + c_.str();
}

QuadraticSurd::QuadraticSurd(BigInt A, BigInt B, BigInt C)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
    if (A_ < 1 || B_ < 1 || C_ < 1)
        throw std::domain_error("QuadraticSurd: need A,B,C >= 1");
    disc_ = B_ * B_ + 4 * A_ * C_;
    // B > 0, so the positive root 2C / (B + sqrt(disc)) is cancellation-free.
    value_ = 2.0 * C_.convert_to<double>() /
             (B_.convert_to<double>() + sqrt_bigint(disc_));
}

int QuadraticSurd::cmp(const Rational& r) const {
    // f(x) = A x^2 + B x - C is increasing at the positive root, so
    // value > r  iff  f(r) < 0.
    BigInt p = r.num(), q = r.den();
    BigInt f = A_ * p * p + B_ * p * q - C_ * q * q; // sign of f(r) * q^2
    if (f == 0) return 0;
    return f < 0 ? 1 : -1;
}

QuadField QuadraticSurd::to_field() const {
    return QuadField(-B_, 1, 2 * A_, disc_);
}

std::string QuadraticSurd::str() const {
    return "root of " + A_.str() + "x^2 + " + B_.str() + "x - " + C_.str();
}

} // namespace ergopt
