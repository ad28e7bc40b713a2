#pragma once

#include "ergopt/rational.hpp"
#include "ergopt/surd.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ergopt {

/// Digit of an extended continued fraction: a positive integer or infinity.
struct Digit {
    static constexpr uint32_t kInf = 0; // internal encoding of the infinite digit

    uint32_t raw = 1;

    Digit() = default;
    explicit Digit(uint32_t v) : raw(v) {}
    static Digit inf() { return Digit(kInf); }

    bool is_inf() const { return raw == kInf; }
    uint32_t value() const {
        if (is_inf()) throw std::domain_error("Digit: value() on infinite digit");
        return raw;
    }
    bool operator==(const Digit&) const = default;
};

/// Finite word over the positive integers (all digits >= 1).
using Word = std::vector<int>;

/// Finite word over the extended digit set (may contain the infinite digit).
struct HatWord {
    std::vector<Digit> digits;

    HatWord() = default;
    explicit HatWord(std::vector<Digit> d) : digits(std::move(d)) {}
    static HatWord from_word(const Word& w);

    size_t size() const { return digits.size(); }
    bool is_finite() const;
    /// 1-based position of the first infinite digit; 0 when none.
    size_t infinity_index() const;
};

std::string word_str(const Word& w);
Word parse_word(const std::string& s); // comma-separated digits

/// Last digit >= 2 (the canonical class for words representing R_n points).
bool in_class_A(const Word& w);
/// Last digit == 1.
bool in_class_B(const Word& w);

/// (a_1,...,a_n) -> (a_1,...,a_n - 1, 1); requires class A.
Word f_shift(const Word& w);
/// Inverse of f_shift; requires class B of length >= 2.
Word f_unshift(const Word& w);

/**
 * Continuant table for a finite word: p[k], q[k] for k = -1..n with the
 * standard three-term recurrence. Index helpers shift by one so that
 * p(-1) = 1, p(0) = 0, q(-1) = 0, q(0) = 1.
 */
struct Continuants {
    std::vector<BigInt> p_; // p_[k+1] = p_k
    std::vector<BigInt> q_;

    const BigInt& p(long k) const { return p_[static_cast<size_t>(k + 1)]; }
    const BigInt& q(long k) const { return q_[static_cast<size_t>(k + 1)]; }
    long order() const { return static_cast<long>(p_.size()) - 2; }
};

struct CylinderInterval {
    Word word;
    Rational lo, hi;
    Rational diameter() const { return hi - lo; }
};

/// Domain constants. The alpha-dependent bound constant comes in two flavors:
/// the literature value K_alpha (with c0 = 2*sqrt(5)/5) and the safe variant
/// derived from the verified growth bound q_n >= theta^(n-1).
struct Constants {
    static double theta() { return (std::sqrt(5.0) + 1.0) / 2.0; }
    static double c0() { return 2.0 * std::sqrt(5.0) / 5.0; }
    static double K_alpha(double alpha);
    static double K_alpha_safe(double alpha);
    static double eta_m(int m);    // (m+2)^-3 / 2
    static double lambda_m(int m); // (1 - eta_m)^-2
    static double safe_growth_constant() { return 1.0 / theta(); }
};

/// One step of the continued-fraction transformation; total on [0,1].
Rational gauss_step(const Rational& x);
double gauss_step(double x);

/// Both finite expansions of x in (0,1): canonical (last digit >= 2) and
/// alternative (ends in 1). cf_expand(1) = {(1), (1)} as the boundary case.
struct Expansions {
    Word canonical;
    Word alternative;
};
Expansions cf_expand(const Rational& x);

Continuants continuants(const Word& w);

/// [a_1,...,a_n] as an exact rational.
Rational eval_cf(const Word& w);

/// Inverse-branch composition T_w evaluated via the Moebius form
/// (p_n + x p_{n-1}) / (q_n + x q_{n-1}); extended digits per the hat rules.
Rational inverse_branch(const Word& w, const Rational& x);
double inverse_branch(const Word& w, double x);
Rational inverse_branch(const HatWord& w, const Rational& x);
double inverse_branch(const HatWord& w, double x);

CylinderInterval cylinder(const Word& w);

/// The unique fixed point of T_w in (0,1): root of
/// q_{n-1} x^2 + (q_n - p_{n-1}) x - p_n = 0.
QuadraticSurd periodic_point(const Word& w);

/// (min E_m, max E_m) = ([m,1-periodic], [1,m-periodic]).
struct EmBounds {
    QuadraticSurd min_point;
    QuadraticSurd max_point;
};
EmBounds em_bounds(int m);

/// Metric on extended digits: |1/a - 1/b| with 1/inf = 0.
double hat_rho(Digit a, Digit b);

/// True iff w is not a power of a strictly shorter word.
bool is_primitive(const Word& w);
Word rotate_word(const Word& w, size_t i);

} // namespace ergopt
