#include "ergopt/locking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ergopt {

LockingConstants locking_constants(const Rational& x, double alpha) {
    LockingConstants lc;
    lc.extended = extended_orbit(x);
    if (x.is_zero()) {
        lc.orbit = {Rational()};
        lc.delta = Rational(1, 3);
        lc.epsilon = Rational(1);
        lc.C_x = 1.0;
        return lc;
    }
    // O(x): the forward orbit down to the fixed point.
    if (x == Rational(1)) {
        lc.orbit = {Rational(), Rational(1)};
    } else {
        Rational y = x;
        lc.orbit.push_back(Rational());
        while (!y.is_zero()) {
            lc.orbit.push_back(y);
            y = gauss_step(y);
        }
        std::sort(lc.orbit.begin(), lc.orbit.end());
    }

    Rational min_gap(2);
    for (size_t i = 1; i < lc.extended.size(); ++i) {
        Rational gap = lc.extended[i] - lc.extended[i - 1];
        if (gap < min_gap) min_gap = gap;
    }
    lc.delta = min_gap / Rational(3);

    if (x == Rational(1)) {
        lc.epsilon = lc.delta / (Rational(1) + lc.delta);
    } else {
        Word a = cf_expand(x).canonical;
        Word b = f_shift(a);
        Rational r_side = (inverse_branch(a, lc.delta) - x).abs();
        Rational l_side = (inverse_branch(b, lc.delta) - x).abs();
        lc.epsilon = std::min(r_side, l_side);
    }
    lc.C_x = std::pow(lc.epsilon.to_double(), -alpha);
    return lc;
}

Potential random_perturbation(uint64_t seed, uint64_t index, double target, int k) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    // Knot values live on a 2^-20 lattice so downstream exact arithmetic
    // stays narrow; the rescaling keeps the exact Lipschitz seminorm equal to
    // the quantized target (one lattice step below the requested value).
    constexpr long long kLattice = 1 << 20;
    std::vector<long long> raw(static_cast<size_t>(k) + 1);
    for (auto& v : raw) v = static_cast<long long>(rng() % (2 * kLattice + 1)) - kLattice;
    long long max_step = 1;
    for (int i = 0; i < k; ++i)
        max_step = std::max(max_step, std::llabs(raw[static_cast<size_t>(i + 1)] -
                                                 raw[static_cast<size_t>(i)]));
    // Exact raw seminorm is max_step * k / kLattice; the final seminorm is
    // floor(target * kLattice) / kLattice.
    Rational scale = Rational(static_cast<long long>(target * kLattice), kLattice) /
                     Rational(max_step * k, kLattice);
    std::vector<std::pair<Rational, Rational>> knots;
    for (int i = 0; i <= k; ++i)
        knots.emplace_back(Rational(i, k),
                           Rational(raw[static_cast<size_t>(i)], kLattice) * scale);
    return Potential::from_knots(std::move(knots), 1.0, "psi");
}

namespace {

struct FamilyArgmax {
    CandidateId id;
    double value = 0.0;
    double margin = 0.0;
    bool exact_tie = false; // exact tie between the top two candidates
};

bool kind_rank_less(const CandidateId& a, const CandidateId& b) {
    auto rank = [](CandidateId::Kind k) {
        switch (k) {
            case CandidateId::Kind::fcf: return 0;
            case CandidateId::Kind::periodic: return 1;
            case CandidateId::Kind::delta0: return 2;
        }
        return 3;
    };
    if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind);
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
}

FamilyArgmax family_argmax(const Potential& pot, const LockBudgets& b) {
    auto ranked = fcf_sweep(pot, b.max_digit, b.max_len, 4);
    OrbitSearchResult orb = restricted_sup_orbits(pot, b.m, b.max_period);

    struct Cand {
        CandidateId id;
        double value;
        std::optional<Rational> exact;
    };
    std::vector<Cand> all;
    for (const auto& e : ranked) all.push_back({e.id, e.value, e.exact_value});
    CandidateId pid;
    pid.kind = CandidateId::Kind::periodic;
    pid.word = orb.best_word;
    all.push_back({pid, orb.best_value, std::nullopt});

    std::sort(all.begin(), all.end(), [](const Cand& a, const Cand& b2) {
        if (a.value != b2.value) return a.value > b2.value;
        return kind_rank_less(a.id, b2.id);
    });
    FamilyArgmax out;
    out.id = all[0].id;
    out.value = all[0].value;
    out.margin = all.size() > 1 ? all[0].value - all[1].value : 0.0;
    if (all.size() > 1) {
        if (all[0].exact && all[1].exact)
            out.exact_tie = *all[0].exact == *all[1].exact;
        else
            out.exact_tie = all[0].value == all[1].value;
    }
    return out;
}

std::vector<Rational> drop_zero(const std::vector<Rational>& pts) {
    std::vector<Rational> out;
    for (const auto& p : pts)
        if (!p.is_zero()) out.push_back(p);
    return out;
}

} // namespace

LockReport locking_experiment(const Potential& phi, const Rational& x, double t, int trials,
                              uint64_t seed, const LockBudgets& budgets,
                              std::optional<double> s, double seminorm_fraction) {
    if (t <= 0.0) throw std::domain_error("locking_experiment: t > 0 required");
    LockReport rep;
    rep.x = x;
    rep.t = t;
    rep.s = s;
    rep.alpha = phi.alpha();
    rep.seed = seed;
    rep.budgets = budgets;
    rep.constants = locking_constants(x, phi.alpha());

    auto build = [&](bool narrowed_s) {
        Potential pot = phi + Potential::distance_power(rep.constants.extended,
                                                        -Rational::from_double(t), phi.alpha(),
                                                        "t-term");
        if (s) {
            auto sites = narrowed_s ? drop_zero(rep.constants.orbit) : rep.constants.orbit;
            if (sites.empty()) sites = rep.constants.orbit; // x = 0: nothing to narrow
            // s applied first: the s-stage separates candidates inside the
            // extended orbit before the t-stage cuts off everything else.
            pot = phi + Potential::distance_power(sites, -Rational::from_double(*s), phi.alpha(),
                                                  "s-term") +
                  Potential::distance_power(rep.constants.extended, -Rational::from_double(t),
                                            phi.alpha(), "t-term");
        }
        return pot;
    };

    Potential base_pot = build(false);
    FamilyArgmax base = family_argmax(base_pot, budgets);
    if (s && base.exact_tie) {
        // A distance penalty to a set containing 0 cannot separate delta_0
        // from candidates supported inside it; narrow the s-target to the
        // nonzero orbit points and record the fact.
        rep.tie_break_applied = true;
        base_pot = build(true);
        base = family_argmax(base_pot, budgets);
    }
    rep.base_winner = base.id;
    rep.base_value = base.value;
    rep.base_margin = base.margin;

    rep.psi_seminorm = seminorm_fraction * t / rep.constants.C_x;
    for (int i = 0; i < trials; ++i) {
        Potential psi = random_perturbation(seed, static_cast<uint64_t>(i), rep.psi_seminorm);
        FamilyArgmax fa = family_argmax(base_pot + psi, budgets);
        LockTrial trial;
        trial.winner = fa.id;
        trial.value = fa.value;
        trial.margin = fa.margin;
        trial.unchanged = fa.id == rep.base_winner;
        if (trial.unchanged) ++rep.unchanged_count;
        rep.trials.push_back(std::move(trial));
    }
    rep.fraction_unchanged =
        trials > 0 ? static_cast<double>(rep.unchanged_count) / trials : 1.0;
    return rep;
}

TransportTrace transport_sequence(double w0, int steps, const Rational& x, double alpha,
                                  const Potential* phi, double guard, double birkhoff_slack) {
    if (steps < 1) throw std::domain_error("transport_sequence: steps >= 1 required");
    TransportTrace tr;
    tr.x = x;
    tr.alpha = alpha;
    tr.constants = locking_constants(x, alpha);
    const double eps = tr.constants.epsilon.to_double();
    const double c_pow = std::pow(tr.constants.C_x, 1.0 / alpha);

    std::vector<double> orbit(static_cast<size_t>(steps));
    orbit[0] = w0;
    for (int i = 1; i < steps; ++i) orbit[static_cast<size_t>(i)] = gauss_step(orbit[static_cast<size_t>(i - 1)]);

    std::vector<Rational> interior;
    for (const auto& p : tr.constants.extended)
        if (!p.is_zero() && p != Rational(1)) interior.push_back(p);

    auto dist_to_extended = [&](double v) {
        double d = 2.0;
        for (const auto& p : tr.constants.extended) d = std::min(d, std::abs(v - p.to_double()));
        return d;
    };

    auto push_step = [&](size_t i, Rational y, char label, bool guard_hit, bool block_end) {
        TransportStep st;
        st.orbit_point = orbit[i];
        st.dist_to_orbit = dist_to_extended(orbit[i]);
        st.deviation = std::abs(orbit[i] - y.to_double());
        st.control_ok = st.deviation <= c_pow * st.dist_to_orbit + 1e-12;
        st.y = std::move(y);
        st.label = label;
        st.guard_triggered = guard_hit;
        st.block_end = block_end;
        tr.steps.push_back(std::move(st));
    };

    size_t t = 0;
    const size_t n_steps = static_cast<size_t>(steps);
    while (t < n_steps) {
        double v = orbit[t];
        bool guard_hit = std::abs(v - eps) <= guard || std::abs(v - (1.0 - eps)) <= guard;
        if (v < eps) {
            push_step(t, Rational(), 'A', guard_hit, true);
            ++t;
            continue;
        }
        if (v > 1.0 - eps) {
            // Near 1: shadow by the two-point tail {1, 0}.
            push_step(t, Rational(1), 'B', guard_hit, false);
            if (t + 1 < n_steps) push_step(t + 1, Rational(), 'B', false, true);
            t += 2;
            continue;
        }
        const Rational* z = nullptr;
        for (const auto& p : interior) {
            double pz = p.to_double();
            if (std::abs(v - pz) < eps) {
                z = &p;
                guard_hit = guard_hit || std::abs(std::abs(v - pz) - eps) <= guard;
                break;
            }
        }
        if (z == nullptr) {
            push_step(t, Rational(), 'D', guard_hit, true);
            ++t;
            continue;
        }
        // Case C: shadow along the orbit of z; the side decides whether the
        // block ends in the fixed point or detours through 1.
        size_t m = cf_expand(*z).canonical.size();
        bool odd = (m % 2) == 1;
        double zd = z->to_double();
        guard_hit = guard_hit || std::abs(v - zd) <= guard;
        bool r_side = odd ? (v <= zd) : (v >= zd);
        std::vector<Rational> block;
        Rational y = *z;
        if (r_side) {
            for (size_t i = 0; i <= m; ++i) {
                block.push_back(y);
                y = gauss_step(y);
            }
        } else {
            for (size_t i = 0; i + 1 <= m; ++i) {
                block.push_back(y);
                y = gauss_step(y);
            }
            block.push_back(Rational(1));
            block.push_back(Rational());
        }
        for (size_t i = 0; i < block.size() && t + i < n_steps; ++i)
            push_step(t + i, block[i], 'C', i == 0 ? guard_hit : false, i + 1 == block.size());
        t += block.size();
    }

    tr.all_control_ok = std::all_of(tr.steps.begin(), tr.steps.end(),
                                    [](const TransportStep& s) { return s.control_ok; });

    if (phi != nullptr) {
        tr.has_birkhoff = true;
        CandidateSet cs = candidate_set_M_x(x);
        double eta = -std::numeric_limits<double>::infinity();
        for (const auto& mu : cs.measures) {
            double val = 0.0;
            for (const auto& [pt, wt] : mu.atoms()) {
                auto ex = phi->eval_exact(pt);
                val += (ex ? ex->to_double() : phi->eval(pt.to_double())) * wt.to_double();
            }
            eta = std::max(eta, val);
        }
        tr.eta = eta;
        double sum = 0.0;
        tr.running_average.reserve(tr.steps.size());
        for (size_t i = 0; i < tr.steps.size(); ++i) {
            const Rational& y = tr.steps[i].y;
            auto ex = phi->eval_exact(y);
            sum += ex ? ex->to_double() : phi->eval(y.to_double());
            tr.running_average.push_back(sum / static_cast<double>(i + 1));
            if (tr.steps[i].block_end) {
                tr.last_block_boundary = i + 1;
                tr.block_average = tr.running_average.back();
            }
        }
        tr.birkhoff_ok = tr.last_block_boundary == 0 || tr.block_average <= eta + birkhoff_slack;
    }
    return tr;
}

} // namespace ergopt
