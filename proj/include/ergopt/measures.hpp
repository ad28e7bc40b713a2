#pragma once

#include "ergopt/cf_core.hpp"
#include "ergopt/potential.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ergopt {

/**
 * Finitely supported probability measure on [0,1] with exact rational atoms
 * and weights. Atoms are kept sorted by position; weights are positive and
 * sum to 1 exactly.
 */
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<std::pair<Rational, Rational>> atoms);

    static DiscreteMeasure dirac(const Rational& point);
    static DiscreteMeasure convex_combination(
        const std::vector<std::pair<Rational, DiscreteMeasure>>& parts);

    const std::vector<std::pair<Rational, Rational>>& atoms() const { return atoms_; }
    size_t size() const { return atoms_.size(); }

    Rational mass_at(const Rational& point) const;
    Rational mass_R1() const; // total weight on unit fractions 1/a, a >= 2
    /// Total weight of atoms y with G(y) == x; exact for finite support.
    Rational preimage_mass(const Rational& x) const;

    bool operator==(const DiscreteMeasure& o) const { return atoms_ == o.atoms_; }

private:
    std::vector<std::pair<Rational, Rational>> atoms_;
};

struct RationalOrbit {
    Word word;
    std::vector<Rational> points; // p_0 = 0, p_k = [a_{n-k+1},...,a_n]
    size_t length() const { return points.size(); } // l = n+1
};

struct FcfMeasure {
    Word word;
    DiscreteMeasure measure;
};

/// Uniform measure on the periodic orbit of a primitive word; points are
/// exact quadratic surds sharing one discriminant.
struct PeriodicOrbitMeasure {
    Word word; // lexicographically smallest rotation
    std::vector<QuadraticSurd> points;
    size_t period() const { return points.size(); }
};

RationalOrbit rational_orbit(const Word& w);
FcfMeasure fcf_measure(const Word& w);
PeriodicOrbitMeasure periodic_measure(const Word& w);

/// Identity check: (l+1) mu_{f(w)} == l mu_w + delta_1, exact. w in class A.
bool alt_form_identity_check(const Word& w);

enum class Violation { none, mass_at_1, mass_R1, preimage };

/// Decomposition into delta_0 and FCF components, by word. The empty word
/// slot stands for delta_0.
struct MembershipCertificate {
    bool member = false;
    Violation violated = Violation::none;
    std::optional<Rational> violating_point;

    Rational delta0_coeff;
    std::vector<std::pair<Word, Rational>> fcf_coeffs; // sorted lexicographically

    /// Rebuilds the measure from the decomposition (members only).
    DiscreteMeasure recombine() const;
};

/**
 * Decides membership of mu in the closure of the invariant measures
 * restricted to finitely supported rational measures: checks
 *   (i)  mu({0}) >= mu({1}) and mu({0}) >= mu(R_1),
 *   (ii) mu({x}) >= mu(G^{-1}(x)) for every x in (0,1) that is an atom or a
 *        G-image of an atom (the only points where either side is nonzero),
 * and on success produces the constructive decomposition with exact
 * recombination.
 */
MembershipCertificate closure_membership(const DiscreteMeasure& mu);

/// Candidate family M_x: suffix FCF measures of the canonical and alternative
/// expansions of x plus delta_0, deduplicated; with the extended orbit.
struct CandidateSet {
    Rational x;
    std::vector<DiscreteMeasure> measures;
    std::vector<Word> words;              // aligned with measures; empty word = delta_0
    std::vector<Rational> extended_orbit; // O(x) together with {0,1}, sorted
};
CandidateSet candidate_set_M_x(const Rational& x);

/// O~(x) = {x, G(x), ..., 0} union {0,1} for rational x, sorted ascending.
std::vector<Rational> extended_orbit(const Rational& x);

/// <mu, phi> = sum of weight * phi(point). The exact overload succeeds when
/// the potential evaluates exactly at rationals.
std::optional<Rational> integrate_exact(const DiscreteMeasure& mu, const Potential& phi);
double integrate(const DiscreteMeasure& mu, const Potential& phi);
/// Exact field arithmetic on the surd orbit when the potential allows it.
double integrate(const PeriodicOrbitMeasure& mu, const Potential& phi);

} // namespace ergopt
