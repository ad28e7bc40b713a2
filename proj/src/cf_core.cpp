#include "ergopt/cf_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ergopt {

HatWord HatWord::from_word(const Word& w) {
    HatWord h;
    h.digits.reserve(w.size());
    for (int a : w) h.digits.emplace_back(static_cast<uint32_t>(a));
    return h;
}

bool HatWord::is_finite() const {
    return std::none_of(digits.begin(), digits.end(), [](Digit d) { return d.is_inf(); });
}

size_t HatWord::infinity_index() const {
    for (size_t i = 0; i < digits.size(); ++i)
        if (digits[i].is_inf()) return i + 1;
    return 0;
}

std::string word_str(const Word& w) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << "]";
    return os.str();
}

Word parse_word(const std::string& s) {
    Word w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int d = std::stoi(tok);
        if (d < 1) throw std::invalid_argument("parse_word: digits must be >= 1");
        w.push_back(d);
    }
    if (w.empty()) throw std::invalid_argument("parse_word: empty word");
    return w;
}

bool in_class_A(const Word& w) { return !w.empty() && w.back() >= 2; }
bool in_class_B(const Word& w) { return !w.empty() && w.back() == 1; }

Word f_shift(const Word& w) {
    if (!in_class_A(w)) throw std::domain_error("f_shift: word not in class A");
    Word r = w;
    r.back() -= 1;
    r.push_back(1);
    return r;
}

Word f_unshift(const Word& w) {
    if (!in_class_B(w) || w.size() < 2)
        throw std::domain_error("f_unshift: word not in class B with length >= 2");
    Word r(w.begin(), w.end() - 1);
    r.back() += 1;
    return r;
}

double Constants::K_alpha(double alpha) {
    double t = theta(), c = c0();
    return std::pow(c, -2.0 * alpha) / (1.0 - std::pow(t, -2.0 * alpha));
}

double Constants::K_alpha_safe(double alpha) {
    double t = theta();
    return std::pow(t, 2.0 * alpha) / (1.0 - std::pow(t, -2.0 * alpha));
}

double Constants::eta_m(int m) {
    double s = static_cast<double>(m) + 2.0;
    return 1.0 / (2.0 * s * s * s);
}

double Constants::lambda_m(int m) {
    double e = eta_m(m);
    return 1.0 / ((1.0 - e) * (1.0 - e));
}

Rational gauss_step(const Rational& x) {
    if (x.is_negative() || !x.is_point_in_unit())
        throw std::domain_error("gauss_step: x outside [0,1]");
    if (x.is_zero()) return Rational();
    // 1/x = den/num; fractional part is (den mod num)/num.
    return Rational(x.den() % x.num(), x.num());
}

double gauss_step(double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("gauss_step: x outside [0,1]");
    if (x == 0.0) return 0.0;
    double inv = 1.0 / x;
    return inv - std::floor(inv);
}

Expansions cf_expand(const Rational& x) {
    if (x.is_zero() || x.is_negative() || !x.is_point_in_unit())
        throw std::domain_error("cf_expand: x must lie in (0,1]");
    if (x.num() == x.den()) return {Word{1}, Word{1}}; // boundary case [1] = 1
    Word canonical;
    BigInt p = x.num(), q = x.den();
    while (p != 0) {
        BigInt a = q / p;
        BigInt r = q % p;
        if (a > 2000000000) throw std::range_error("cf_expand: digit exceeds supported range");
        canonical.push_back(a.convert_to<int>());
        q = p;
        p = r;
    }
    // Euclid on a reduced fraction in (0,1) always ends with a digit >= 2.
    Word alternative = f_shift(canonical);
    return {std::move(canonical), std::move(alternative)};
}

Continuants continuants(const Word& w) {
    if (w.empty()) throw std::domain_error("continuants: empty word");
    Continuants c;
    size_t n = w.size();
    c.p_.resize(n + 2);
    c.q_.resize(n + 2);
    c.p_[0] = 1; // p_{-1}
    c.p_[1] = 0; // p_0
    c.q_[0] = 0;
    c.q_[1] = 1;
    for (size_t k = 1; k <= n; ++k) {
        c.p_[k + 1] = w[k - 1] * c.p_[k] + c.p_[k - 1];
        c.q_[k + 1] = w[k - 1] * c.q_[k] + c.q_[k - 1];
    }
    return c;
}

Rational eval_cf(const Word& w) {
    if (w.empty()) throw std::domain_error("eval_cf: empty word");
    Continuants c = continuants(w);
    long n = static_cast<long>(w.size());
    return Rational(c.p(n), c.q(n));
}

Rational inverse_branch(const Word& w, const Rational& x) {
    if (x.is_negative() || !x.is_point_in_unit())
        throw std::domain_error("inverse_branch: x outside [0,1]");
    if (w.empty()) return x;
    Continuants c = continuants(w);
    long n = static_cast<long>(w.size());
    return Rational(c.p(n) * x.den() + x.num() * c.p(n - 1),
                    c.q(n) * x.den() + x.num() * c.q(n - 1));
}

double inverse_branch(const Word& w, double x) {
    // Right-to-left branch nesting is numerically stable in double.
    double y = x;
    for (auto it = w.rbegin(); it != w.rend(); ++it) y = 1.0 / (*it + y);
    return y;
}

namespace {

// Resolves the hat rules: returns the finite prefix to evaluate, or nullopt
// when the value is the constant 0 (infinity in first position).
std::optional<Word> hat_effective_prefix(const HatWord& w) {
    size_t iota = w.infinity_index();
    if (iota == 1) return std::nullopt;
    size_t take = iota == 0 ? w.size() : iota - 1;
    Word prefix;
    prefix.reserve(take);
    for (size_t i = 0; i < take; ++i) prefix.push_back(static_cast<int>(w.digits[i].value()));
    return prefix;
}

} // namespace

Rational inverse_branch(const HatWord& w, const Rational& x) {
    auto prefix = hat_effective_prefix(w);
    if (!prefix) return Rational();
    if (w.infinity_index() == 0) return inverse_branch(*prefix, x);
    return prefix->empty() ? Rational() : eval_cf(*prefix);
}

double inverse_branch(const HatWord& w, double x) {
    auto prefix = hat_effective_prefix(w);
    if (!prefix) return 0.0;
    if (w.infinity_index() == 0) return inverse_branch(*prefix, x);
    return prefix->empty() ? 0.0 : eval_cf(*prefix).to_double();
}

CylinderInterval cylinder(const Word& w) {
    if (w.empty()) throw std::domain_error("cylinder: empty word");
    Continuants c = continuants(w);
    long n = static_cast<long>(w.size());
    Rational at0(c.p(n), c.q(n));
    Rational at1(c.p(n) + c.p(n - 1), c.q(n) + c.q(n - 1));
    CylinderInterval ci;
    ci.word = w;
    // T_w is increasing for even length, decreasing for odd length.
    if (n % 2 == 0) {
        ci.lo = std::move(at0);
        ci.hi = std::move(at1);
    } else {
        ci.lo = std::move(at1);
        ci.hi = std::move(at0);
    }
    return ci;
}

QuadraticSurd periodic_point(const Word& w) {
    if (w.empty()) throw std::domain_error("periodic_point: empty word");
    Continuants c = continuants(w);
    long n = static_cast<long>(w.size());
    return QuadraticSurd(c.q(n - 1), c.q(n) - c.p(n - 1), c.p(n));
}

EmBounds em_bounds(int m) {
    if (m < 1) throw std::domain_error("em_bounds: m >= 1 required");
    QuadraticSurd min_pt = periodic_point(Word{m, 1});
    QuadraticSurd max_pt = periodic_point(Word{1, m});
    // [m,1-periodic] > [m,1] = 1/(m+1) and [1,m-periodic] < [1,m+1] = (m+1)/(m+2).
    if (min_pt.cmp(Rational(1, m + 1)) <= 0)
        throw std::logic_error("em_bounds: lower bound violated");
    if (max_pt.cmp(Rational(m + 1, m + 2)) >= 0)
        throw std::logic_error("em_bounds: upper bound violated");
    return {std::move(min_pt), std::move(max_pt)};
}

double hat_rho(Digit a, Digit b) {
    double ia = a.is_inf() ? 0.0 : 1.0 / static_cast<double>(a.value());
    double ib = b.is_inf() ? 0.0 : 1.0 / static_cast<double>(b.value());
    return std::abs(ia - ib);
}

bool is_primitive(const Word& w) {
    size_t n = w.size();
    for (size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (size_t i = p; i < n && periodic; ++i) periodic = (w[i] == w[i - p]);
        if (periodic) return false;
    }
    return true;
}

Word rotate_word(const Word& w, size_t i) {
    Word r;
    r.reserve(w.size());
    for (size_t k = 0; k < w.size(); ++k) r.push_back(w[(k + i) % w.size()]);
    return r;
}

} // namespace ergopt
