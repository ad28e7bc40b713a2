#include "ergopt/bousch.hpp"

#include "ergopt/cf_core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <limits>

namespace ergopt {

BouschApply bousch_apply(const GridFunction& u, const Potential& psi, const BouschOptions& opts) {
    size_t n = u.n_cells();
    std::vector<double> out(n + 1);
    double worst_gap = 0.0;
    int max_a = 0;

    // The tail bound sup over [0, 1/A] of (u + psi) does not depend on the
    // node, so it is computed once per distinct branch count.
    std::map<int, double> tail_ub;
    auto tail_bound = [&](int A) {
        auto it = tail_ub.find(A);
        if (it != tail_ub.end()) return it->second;
        double cover = 1.0 / A;
        double v = u.sup_on(0.0, cover) + psi.sup_on(0.0, cover);
        tail_ub.emplace(A, v);
        return v;
    };

    const double at_zero = u.values().front() + psi.eval(0.0);
    for (size_t i = 0; i <= n; ++i) {
        double x = u.node(i);
        double best = at_zero; // infinite branch, always included
        int A = std::max(2, opts.branch_cutoff);
        for (int a = 1; a <= A; ++a) {
            double y = 1.0 / (a + x);
            best = std::max(best, u(y) + psi.eval(y));
        }
        double gap;
        for (;;) {
            gap = tail_bound(A) - best;
            if (gap <= opts.tail_tol || A >= opts.max_branches) break;
            int next = std::min(opts.max_branches, 2 * A);
            for (int a = A + 1; a <= next; ++a) {
                double y = 1.0 / (a + x);
                best = std::max(best, u(y) + psi.eval(y));
            }
            A = next;
        }
        if (!std::isfinite(best)) throw std::domain_error("bousch_apply: non-finite value");
        out[i] = best;
        worst_gap = std::max(worst_gap, std::max(0.0, gap));
        max_a = std::max(max_a, A);
    }
    return {GridFunction(std::move(out), u.alpha()), worst_gap, max_a};
}

DriftResult drift_q_estimate(const Potential& phi, int n_iters, size_t grid,
                             const BouschOptions& opts) {
    if (n_iters < 2) throw std::domain_error("drift_q_estimate: n_iters >= 2 required");
    GridFunction t(grid, 0.0, phi.alpha());
    for (int k = 0; k < n_iters; ++k) t = bousch_apply(t, phi, opts).value;
    double lo = t.min_value() / n_iters;
    double hi = t.max_value() / n_iters;
    double alpha = phi.alpha();
    double theta2a = std::pow(Constants::theta(), -2.0 * alpha);
    double interp = phi.seminorm_bound() * std::pow(1.0 / grid, alpha) / (1.0 - theta2a);
    double err = (Constants::K_alpha_safe(alpha) * phi.seminorm_bound() + interp) / n_iters;
    return {lo, hi, err, n_iters};
}

BouschResult calibrated_subaction(const Potential& phi, double q, size_t grid, int window,
                                  int max_iters, double tol, const BouschOptions& opts) {
    if (window < 1) throw std::domain_error("calibrated_subaction: window >= 1 required");
    Potential psi = phi.shifted(Rational::from_double(q));

    GridFunction r(grid, 0.0, phi.alpha());
    std::deque<std::vector<double>> buf{r.values()};
    std::vector<double> s_prev;
    double delta = std::numeric_limits<double>::infinity();
    double mono_violation = 0.0;
    double worst_gap = 0.0;
    int iter = 0;
    bool converged = false;

    while (iter < max_iters) {
        BouschApply ap = bousch_apply(r, psi, opts);
        r = std::move(ap.value);
        worst_gap = std::max(worst_gap, ap.tail_gap);
        ++iter;
        buf.push_back(r.values());
        if (buf.size() > static_cast<size_t>(window + 1)) buf.pop_front();
        if (buf.size() < static_cast<size_t>(window + 1)) continue;

        std::vector<double> s = buf.front();
        for (const auto& layer : buf)
            for (size_t i = 0; i < s.size(); ++i) s[i] = std::max(s[i], layer[i]);
        if (!s_prev.empty()) {
            delta = 0.0;
            for (size_t i = 0; i < s.size(); ++i) {
                delta = std::max(delta, std::abs(s[i] - s_prev[i]));
                mono_violation = std::max(mono_violation, s[i] - s_prev[i]);
            }
            if (delta <= tol) {
                s_prev = std::move(s);
                converged = true;
                break;
            }
        }
        s_prev = std::move(s);
    }

    if (!converged) {
        GridFunction u(s_prev.empty() ? r.values() : s_prev, phi.alpha());
        double res = mane_residual(u, psi, opts);
        throw ConvergenceError("calibrated_subaction: windowed max did not stabilize", res,
                               delta);
    }

    BouschResult out;
    out.u = GridFunction(s_prev, phi.alpha());
    out.q_estimate = q;
    out.iterations = iter;
    out.residual = mane_residual(out.u, psi, opts);
    out.tail_gap = worst_gap;
    out.window_delta = delta;
    out.monotonicity_violation = mono_violation;
    out.sup_norm = std::max(std::abs(out.u.max_value()), std::abs(out.u.min_value()));
    out.seminorm_estimate = grid_seminorm_estimate(out.u);
    double bound = Constants::K_alpha_safe(phi.alpha()) * phi.seminorm_bound();
    double slack = 10.0 * tol + 1e-2;
    out.sup_norm_bound_check = out.sup_norm <= bound + slack;
    out.seminorm_bound_check = out.seminorm_estimate <= bound + slack;
    out.u_at_zero = out.u.values().front();
    return out;
}

double mane_residual(const GridFunction& u, const Potential& phibar, const BouschOptions& opts) {
    BouschApply ap = bousch_apply(u, phibar, opts);
    double res = 0.0;
    for (size_t i = 0; i < u.values().size(); ++i)
        res = std::max(res, std::abs(u.values()[i] - ap.value.values()[i]));
    return res;
}

RevealedResult revealed_potential(const Potential& phi, double q, const GridFunction& u,
                                  double zero_tol) {
    size_t n = u.n_cells();
    std::vector<double> vals(n + 1);
    RevealedResult out;
    for (size_t i = 0; i <= n; ++i) {
        Rational xi(static_cast<long long>(i), static_cast<long long>(n));
        Rational gx = gauss_step(xi);
        auto exact = phi.eval_exact(xi);
        double phix = exact ? exact->to_double() : phi.eval(u.node(i));
        double v = phix - q + u.values()[i] - u(gx.to_double());
        vals[i] = v;
        if (v >= -zero_tol) out.zero_nodes.push_back(i);
    }
    out.max_value = *std::max_element(vals.begin(), vals.end());
    out.phitilde = GridFunction(std::move(vals), u.alpha());
    return out;
}

} // namespace ergopt
