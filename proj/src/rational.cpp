#include "ergopt/rational.hpp"

#include <cmath>
#include <limits>

namespace ergopt {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::reciprocal() const {
    if (num_ == 0) throw std::domain_error("Rational: reciprocal of zero");
    return Rational(den_, num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    BigInt lhs = num_ * o.den_;
    BigInt rhs = o.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

double Rational::to_double() const {
    // cpp_int -> double is correctly rounded only for small values; go through
    // a quotient with guard bits so huge num/den pairs still convert sanely.
    if (num_ == 0) return 0.0;
    BigInt n = num_ < 0 ? BigInt(-num_) : num_;
    const BigInt& d = den_;
    // Scale so the integer quotient carries ~63 significant bits.
    long shift = static_cast<long>(boost::multiprecision::msb(d)) + 63 -
                 static_cast<long>(boost::multiprecision::msb(n));
    BigInt scaled = shift >= 0 ? BigInt(n << shift) : BigInt(n >> -shift);
    BigInt q = scaled / d;
    double result = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
    return num_ < 0 ? -result : result;
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

namespace {

// Strict base-10 integer parse (cpp_int's string constructor would read a
// leading zero as an octal prefix).
BigInt parse_decimal(const std::string& s) {
    size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
    if (i >= s.size()) throw std::invalid_argument("empty integer");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad digit");
        v = v * 10 + (s[i] - '0');
    }
    return negative ? -v : v;
}

} // namespace

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            // Accept plain decimals like "0.25" for CLI convenience; they are
            // parsed exactly (decimal digits -> num/10^k).
            auto dot = s.find('.');
            if (dot == std::string::npos) return Rational(parse_decimal(s), BigInt(1));
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            size_t frac_len = s.size() - dot - 1;
            BigInt den = 1;
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rational(parse_decimal(digits), den);
        }
        return Rational(parse_decimal(s.substr(0, slash)), parse_decimal(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("Rational::parse: malformed rational '" + s + "'");
    }
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational::from_double: non-finite");
    if (x == 0.0) return Rational();
    int exp = 0;
    double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    BigInt n = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    if (exp >= 0) return Rational(n << exp, BigInt(1));
    return Rational(n, BigInt(1) << -exp);
}

} // namespace ergopt
