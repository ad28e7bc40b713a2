#pragma once

#include "ergopt/cf_core.hpp"
#include "ergopt/grid_function.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ergopt {

/**
 * Continuous piecewise-affine function on [0,1] with rational knots.
 * Exactly evaluable at rational points and at quadratic surds.
 */
class PiecewiseAffine {
public:
    PiecewiseAffine() = default;
    explicit PiecewiseAffine(std::vector<std::pair<Rational, Rational>> knots);

    const std::vector<std::pair<Rational, Rational>>& knots() const { return knots_; }

    Rational eval(const Rational& x) const;
    double eval(double x) const;
    QuadField eval(const QuadraticSurd& x) const;

    /// Exact Lipschitz seminorm = max |slope|; an upper bound for the
    /// alpha-seminorm for every alpha in (0,1] on a domain of diameter <= 1.
    Rational lipschitz_seminorm() const;

    /// Exact maximum over [lo,hi] (attained at an endpoint or interior knot).
    Rational max_on(const Rational& lo, const Rational& hi) const;

private:
    std::vector<std::pair<Rational, Rational>> knots_; // sorted by x, x in [0,1]
    std::vector<double> kx_, ky_;                      // cached doubles for eval(double)
    size_t segment_of(const Rational& x) const;
};

/// coeff * d(x, sites)^alpha. Sites may be irrational (surd orbit points), in
/// which case only double evaluation is available.
struct DistanceTerm {
    Rational coeff;
    double alpha = 1.0;
    std::vector<double> sites;
    std::optional<std::vector<Rational>> exact_sites;

    bool exact_capable() const { return exact_sites.has_value() && alpha == 1.0; }
};

/**
 * An evaluable potential: a sum of piecewise-affine parts, distance-power
 * terms, and at most one tabulated grid part, together with a Hoelder
 * exponent and a certified seminorm bound.
 */
class Potential {
public:
    Potential() = default;

    static Potential constant(const Rational& c);
    static Potential neg_x();
    static Potential example76();
    static Potential from_knots(std::vector<std::pair<Rational, Rational>> knots,
                                double alpha = 1.0, std::string name = "piecewise");
    static Potential tabulated(GridFunction g, std::string name = "tabulated");
    /// coeff * d(., sites)^alpha with rational sites.
    static Potential distance_power(std::vector<Rational> sites, const Rational& coeff,
                                    double alpha, std::string name = "distance");
    /// coeff * d(., sites)^alpha with arbitrary (e.g. surd) sites.
    static Potential distance_power_approx(std::vector<double> sites, const Rational& coeff,
                                           double alpha, std::string name = "distance~");

    Potential operator+(const Potential& o) const;

    double alpha() const { return alpha_; }
    double seminorm_bound() const { return seminorm_bound_; }
    const std::string& name() const { return name_; }

    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    bool supports_exact_rational() const;
    bool supports_surd() const;
    std::optional<Rational> eval_exact(const Rational& x) const;
    std::optional<QuadField> eval_surd(const QuadraticSurd& x) const;

    /// Certified upper bound for sup over [lo,hi] (sum of per-part bounds).
    double sup_on(double lo, double hi) const;

    /// phi - q as a potential (exact when q is rational).
    Potential shifted(const Rational& q) const;

private:
    double alpha_ = 1.0;
    double seminorm_bound_ = 0.0;
    std::string name_ = "zero";
    std::vector<PiecewiseAffine> pw_;
    std::vector<DistanceTerm> dist_;
    std::optional<GridFunction> tab_;
};

} // namespace ergopt
