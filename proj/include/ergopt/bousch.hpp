#pragma once

#include "ergopt/grid_function.hpp"
#include "ergopt/potential.hpp"

#include <stdexcept>
#include <vector>

namespace ergopt {

struct ConvergenceError : std::runtime_error {
    double last_residual;
    double last_delta;
    ConvergenceError(const std::string& msg, double residual, double delta)
        : std::runtime_error(msg), last_residual(residual), last_delta(delta) {}
};

struct BouschOptions {
    int branch_cutoff = 64;   // initial number of finite branches per node
    double tail_tol = 1e-6;   // certified tail gap target
    int max_branches = 1 << 20;
};

/// One application of the max-plus operator, with tail certification data.
struct BouschApply {
    GridFunction value;
    double tail_gap = 0.0; // largest uncertified tail excess across nodes
    int max_branches_used = 0;
};

/**
 * (L_psi u)(x) = sup over branches a of (u + psi)(1/(a+x)), including the
 * infinite-branch candidate (u + psi)(0). Finite branches are added until the
 * exact supremum of u + psi over the uncovered tail interval [0, 1/A] exceeds
 * the running maximum by less than tail_tol.
 */
BouschApply bousch_apply(const GridFunction& u, const Potential& psi,
                         const BouschOptions& opts = {});

struct DriftResult {
    double q_low = 0.0;
    double q_high = 0.0;
    double error_bound = 0.0; // |Q - q| <= spread/2 + error_bound
    int iterations = 0;
    double mid() const { return 0.5 * (q_low + q_high); }
};

/// Q(G, phi) estimate from the linear drift of L_phi^n(0).
DriftResult drift_q_estimate(const Potential& phi, int n_iters, size_t grid,
                             const BouschOptions& opts = {});

struct BouschResult {
    GridFunction u;
    double q_estimate = 0.0;
    double residual = 0.0; // sup |u - L_{phi-q}(u)| over nodes
    int iterations = 0;
    bool sup_norm_bound_check = false;  // ||u||_inf <= K'_alpha [phi]_alpha + slack
    bool seminorm_bound_check = false;  // grid seminorm <= K'_alpha [phi]_alpha + slack
    double sup_norm = 0.0;
    double seminorm_estimate = 0.0;
    double tail_gap = 0.0;
    double window_delta = 0.0;          // final sup-change of the windowed max
    double monotonicity_violation = 0.0;
    double u_at_zero = 0.0;
};

/**
 * Calibrated sub-action: the limsup of L_{phi-q}^n(0), realized as the
 * pointwise max over a sliding window of iterates, iterated until the
 * windowed max stabilizes in sup norm.
 */
BouschResult calibrated_subaction(const Potential& phi, double q, size_t grid, int window,
                                  int max_iters, double tol, const BouschOptions& opts = {});

/// sup over nodes of |u(x) - (L_phibar u)(x)|.
double mane_residual(const GridFunction& u, const Potential& phibar,
                     const BouschOptions& opts = {});

struct RevealedResult {
    GridFunction phitilde;
    std::vector<size_t> zero_nodes; // nodes with phitilde >= -zero_tol
    double max_value = 0.0;
};

/// phitilde(x_i) = phi(x_i) - q + u(x_i) - u(G(x_i)), with G evaluated
/// exactly on the rational grid nodes.
RevealedResult revealed_potential(const Potential& phi, double q, const GridFunction& u,
                                  double zero_tol = 1e-6);

} // namespace ergopt
