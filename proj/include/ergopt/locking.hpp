#pragma once

#include "ergopt/ergsup.hpp"

#include <cstdint>
#include <optional>

namespace ergopt {

/// Constants from the rational-locking construction: delta is a third of the
/// minimal gap of the extended orbit, epsilon the one-sided approach width at
/// x, and C_x = epsilon^-alpha.
struct LockingConstants {
    std::vector<Rational> orbit;    // O(x) = {x, G(x), ..., 0}
    std::vector<Rational> extended; // O(x) with {0,1}
    Rational delta;
    Rational epsilon;
    double C_x = 1.0;
};

LockingConstants locking_constants(const Rational& x, double alpha);

struct LockBudgets {
    int max_digit = 8;
    int max_len = 6;
    int m = 8;
    int max_period = 5;
};

struct LockTrial {
    CandidateId winner;
    double value = 0.0;
    double margin = 0.0;
    bool unchanged = false;
};

struct LockReport {
    Rational x;
    double t = 0.0;
    std::optional<double> s;
    double alpha = 1.0;
    LockingConstants constants;
    double psi_seminorm = 0.0; // exact Lipschitz seminorm target of the draws
    uint64_t seed = 0;
    LockBudgets budgets;
    CandidateId base_winner;
    double base_value = 0.0;
    double base_margin = 0.0;
    bool tie_break_applied = false;
    std::vector<LockTrial> trials;
    int unchanged_count = 0;
    double fraction_unchanged = 0.0;
};

/**
 * Perturbation-stability experiment: builds phi_t = phi - t d(., O~(x))^alpha
 * (optionally two-stage with an s d(., O(x))^alpha term applied first), then
 * draws seeded random piecewise-affine perturbations psi with
 * [psi]_alpha = fraction * t / C_x and records whether the argmax over the
 * finite candidate family is unchanged.
 *
 * When the unperturbed two-stage argmax ties exactly (a distance penalty
 * cannot separate delta_0 from a measure whose support contains 0), the
 * s-stage target is narrowed to O(x) without 0 and the report flags it.
 */
LockReport locking_experiment(const Potential& phi, const Rational& x, double t, int trials,
                              uint64_t seed, const LockBudgets& budgets = {},
                              std::optional<double> s = std::nullopt,
                              double seminorm_fraction = 0.9);

/// Seeded piecewise-affine perturbation with k equal cells and exact dyadic
/// knot values, rescaled so the exact Lipschitz seminorm is target (within
/// one rounding step below).
Potential random_perturbation(uint64_t seed, uint64_t index, double target, int k = 12);

struct TransportStep {
    double orbit_point = 0.0; // G^i(w0)
    Rational y;               // transported point in O~(x)
    char label = 'D';         // A near 0, B near 1, C near interior point, D far
    double dist_to_orbit = 0.0;
    double deviation = 0.0;
    bool control_ok = false;
    bool guard_triggered = false;
    bool block_end = false;
};

struct TransportTrace {
    Rational x;
    double alpha = 1.0;
    LockingConstants constants;
    std::vector<TransportStep> steps;
    bool all_control_ok = false;
    // Birkhoff comparison against eta = max over M_x (when a potential is given).
    bool has_birkhoff = false;
    double eta = 0.0;
    std::vector<double> running_average;
    size_t last_block_boundary = 0; // number of steps in complete blocks
    double block_average = 0.0;     // average of phi(y_i) over complete blocks
    bool birkhoff_ok = false;
};

/**
 * Builds the transported shadow sequence y_i in O~(x) for the float orbit of
 * w0, labelling each index by the recursive case, verifying the distance
 * control |G^i(w0) - y_i| <= C_x^{1/alpha} d(G^i(w0), O~(x)) at every index,
 * and (optionally) comparing block Birkhoff averages of phi(y_i) with eta.
 */
TransportTrace transport_sequence(double w0, int steps, const Rational& x, double alpha,
                                  const Potential* phi = nullptr, double guard = 1e-12,
                                  double birkhoff_slack = 1e-2);

} // namespace ergopt
