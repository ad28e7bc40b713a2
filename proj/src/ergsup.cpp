#include "ergopt/ergsup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ergopt {

std::string CandidateId::str() const {
    switch (kind) {
        case Kind::delta0: return "delta0";
        case Kind::fcf: return "fcf" + word_str(word);
        case Kind::periodic: return "per" + word_str(word);
    }
    return "?";
}

namespace {

// Duval's generation of Lyndon words over {1..m} with length <= max_len, in
// lexicographic order. Each Lyndon word is the canonical representative of a
// primitive necklace.
void for_each_lyndon(int m, int max_len, const std::function<void(const Word&)>& visit) {
    Word w{1};
    for (;;) {
        visit(w);
        size_t p = w.size();
        while (w.size() < static_cast<size_t>(max_len)) w.push_back(w[w.size() - p]);
        while (!w.empty() && w.back() == m) w.pop_back();
        if (w.empty()) return;
        w.back() += 1;
    }
}

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Deterministic candidate preference for equal values: delta_0 last, then
// shorter word, then lexicographic.
bool id_preferred(const CandidateId& a, const CandidateId& b) {
    bool a0 = a.kind == CandidateId::Kind::delta0;
    bool b0 = b.kind == CandidateId::Kind::delta0;
    if (a0 != b0) return !a0;
    return word_less(a.word, b.word);
}

} // namespace

OrbitValue orbit_birkhoff_mean(const Word& w, const Potential& phi) {
    size_t n = w.size();
    if (phi.supports_surd()) {
        std::optional<QuadField> sum;
        for (size_t i = 0; i < n; ++i) {
            QuadraticSurd pt = periodic_point(rotate_word(w, i));
            QuadField v = *phi.eval_surd(pt);
            sum = sum ? *sum + v : v;
        }
        Rational inv_n(1, static_cast<long long>(n));
        return {sum->scaled(inv_n).to_double(), true};
    }
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i)
        sum += phi.eval(periodic_point(rotate_word(w, i)).to_double());
    return {sum / static_cast<double>(n), false};
}

namespace {

// Necklace search over {1..m}, optionally restricted to words whose maximal
// digit is exactly `required_max` (for incremental sweeps).
OrbitSearchResult orbit_search(const Potential& phi, int m, int max_period, int required_max) {
    OrbitSearchResult best;
    best.m = m;
    best.max_period = max_period;
    best.best_value = -std::numeric_limits<double>::infinity();
    for_each_lyndon(m, max_period, [&](const Word& w) {
        if (required_max > 0 && *std::max_element(w.begin(), w.end()) != required_max) return;
        OrbitValue v = orbit_birkhoff_mean(w, phi);
        if (v.value > best.best_value ||
            (v.value == best.best_value && word_less(w, best.best_word))) {
            best.best_value = v.value;
            best.best_word = w;
            best.exact = v.exact;
        }
    });
    return best;
}

} // namespace

OrbitSearchResult restricted_sup_orbits(const Potential& phi, int m, int max_period) {
    if (m < 1 || max_period < 1)
        throw std::domain_error("restricted_sup_orbits: m, P >= 1 required");
    return orbit_search(phi, m, max_period, 0);
}

std::vector<OrbitSearchResult> restricted_sup_sweep(const Potential& phi, int m_max,
                                                    int max_period) {
    std::vector<OrbitSearchResult> out;
    for (int m = 1; m <= m_max; ++m) {
        OrbitSearchResult r = orbit_search(phi, m, max_period, m == 1 ? 0 : m);
        if (!out.empty()) {
            const OrbitSearchResult& prev = out.back();
            if (prev.best_value > r.best_value ||
                (prev.best_value == r.best_value && word_less(prev.best_word, r.best_word))) {
                r.best_value = prev.best_value;
                r.best_word = prev.best_word;
                r.exact = prev.exact;
            }
        }
        r.m = m;
        out.push_back(std::move(r));
    }
    return out;
}

double restricted_sup_cycle_bound(const Potential& phi, int m, int depth, size_t node_budget) {
    if (m < 1 || depth < 1) throw std::domain_error("cycle_bound: m, k >= 1 required");
    size_t V = 1;
    for (int i = 0; i < depth; ++i) {
        V *= static_cast<size_t>(m);
        if (V > node_budget) throw BudgetExceeded("cycle_bound: node budget exceeded", i);
    }
    size_t E = V * static_cast<size_t>(m);
    // Karp costs O(V*E); cap the total work, not just the node count.
    if (static_cast<double>(V) * static_cast<double>(E) > 4e9)
        throw BudgetExceeded("cycle_bound: work budget exceeded", depth);
    const double kNegInf = -std::numeric_limits<double>::infinity();

    // Edge u -> v where v's first depth-1 digits equal u's last depth-1
    // digits; the edge carries the (depth+1)-word and the supremum of phi over
    // its cylinder.
    std::vector<double> weight(E);
    {
        Word w(static_cast<size_t>(depth) + 1, 1);
        for (size_t e = 0; e < E; ++e) {
            size_t rem = e;
            for (int pos = depth; pos >= 0; --pos) {
                w[static_cast<size_t>(pos)] = static_cast<int>(rem % m) + 1;
                rem /= m;
            }
            CylinderInterval ci = cylinder(w);
            if (phi.supports_exact_rational()) {
                // Exact maximum of a piecewise-affine function over the cylinder.
                Rational best = *phi.eval_exact(ci.lo);
                Rational at_hi = *phi.eval_exact(ci.hi);
                if (at_hi > best) best = at_hi;
                // Interior kinks: sample the cylinder finely enough via its
                // endpoints is not sufficient in general; delegate to sup_on.
                weight[e] = phi.sup_on(ci.lo.to_double(), ci.hi.to_double());
                weight[e] = std::max(weight[e], best.to_double());
            } else {
                double mid = 0.5 * (ci.lo.to_double() + ci.hi.to_double());
                double diam = ci.diameter().to_double();
                weight[e] = phi.eval(mid) + phi.seminorm_bound() * std::pow(diam, phi.alpha());
            }
        }
    }

    size_t shift = V / static_cast<size_t>(m); // drop the first digit: (u % shift)*m + c
    auto relax = [&](const std::vector<double>& cur, std::vector<double>& next) {
        std::fill(next.begin(), next.end(), kNegInf);
        for (size_t u = 0; u < V; ++u) {
            if (cur[u] == kNegInf) continue;
            size_t base_v = (u % shift) * static_cast<size_t>(m);
            size_t base_e = u * static_cast<size_t>(m);
            for (int c = 0; c < m; ++c) {
                double cand = cur[u] + weight[base_e + static_cast<size_t>(c)];
                if (cand > next[base_v + static_cast<size_t>(c)])
                    next[base_v + static_cast<size_t>(c)] = cand;
            }
        }
    };

    // Karp's formula with a two-pass streaming evaluation (memory O(V)).
    std::vector<double> cur(V, kNegInf), next(V);
    cur[0] = 0.0; // single source; the graph is strongly connected
    for (size_t k = 0; k < V; ++k) {
        relax(cur, next);
        std::swap(cur, next);
    }
    std::vector<double> Fn = cur;

    std::vector<double> acc(V, std::numeric_limits<double>::infinity());
    std::fill(cur.begin(), cur.end(), kNegInf);
    cur[0] = 0.0;
    for (size_t k = 0; k < V; ++k) {
        for (size_t v = 0; v < V; ++v) {
            if (Fn[v] == kNegInf || cur[v] == kNegInf) continue;
            double mean = (Fn[v] - cur[v]) / static_cast<double>(V - k);
            if (mean < acc[v]) acc[v] = mean;
        }
        relax(cur, next);
        std::swap(cur, next);
    }
    double lambda = kNegInf;
    for (size_t v = 0; v < V; ++v)
        if (Fn[v] != kNegInf && acc[v] != std::numeric_limits<double>::infinity())
            lambda = std::max(lambda, acc[v]);
    return lambda;
}

std::vector<SweepEntry> fcf_sweep(const Potential& phi, int max_digit, int max_len,
                                  size_t top_k) {
    if (max_digit < 1 || max_len < 1)
        throw std::domain_error("fcf_sweep: D, L >= 1 required");
    const bool exact = phi.supports_exact_rational();
    const double phi0 = exact ? phi.eval_exact(Rational())->to_double() : phi.eval(0.0);

    // The scan ranks by double-valued means; the surviving top entries are
    // re-evaluated exactly afterwards so that ties at the top are decided by
    // exact arithmetic, not floating point.
    std::vector<SweepEntry> top;
    auto consider = [&](SweepEntry e) {
        top.push_back(std::move(e));
        std::sort(top.begin(), top.end(), [](const SweepEntry& a, const SweepEntry& b) {
            if (a.value != b.value) return a.value > b.value;
            return id_preferred(a.id, b.id);
        });
        if (top.size() > top_k) top.pop_back();
    };

    {
        SweepEntry d0;
        d0.id.kind = CandidateId::Kind::delta0;
        d0.value = phi0;
        consider(std::move(d0));
    }

    // Depth-first over reversed words: appending digit a to the reversed word
    // prepends it to the actual word, and updates the full-word value from
    // p/q to q/(a q + p). The path values are exactly the orbit points.
    Word rev;
    std::vector<BigInt> pstk{BigInt(0)}, qstk{BigInt(1)};
    std::vector<double> sum{phi0};

    std::function<void()> dfs = [&]() {
        for (int a = 1; a <= max_digit; ++a) {
            BigInt np = qstk.back();
            BigInt nq = a * qstk.back() + pstk.back();
            // np/nq is already reduced (consecutive continuants are coprime).
            double point = np.convert_to<double>() / nq.convert_to<double>();
            rev.push_back(a);
            pstk.push_back(std::move(np));
            qstk.push_back(std::move(nq));
            sum.push_back(sum.back() + phi.eval(point));
            SweepEntry e;
            e.id.kind = CandidateId::Kind::fcf;
            e.id.word.assign(rev.rbegin(), rev.rend());
            e.value = sum.back() / static_cast<double>(rev.size() + 1);
            consider(std::move(e));
            if (rev.size() < static_cast<size_t>(max_len)) dfs();
            rev.pop_back();
            pstk.pop_back();
            qstk.pop_back();
            sum.pop_back();
        }
    };
    dfs();

    if (exact) {
        for (auto& e : top) {
            DiscreteMeasure mu = e.id.kind == CandidateId::Kind::delta0
                                     ? DiscreteMeasure::dirac(Rational())
                                     : fcf_measure(e.id.word).measure;
            Rational v;
            for (const auto& [pt, wt] : mu.atoms()) v += wt * *phi.eval_exact(pt);
            e.exact_value = v;
            e.value = v.to_double();
            e.exact = true;
        }
        std::sort(top.begin(), top.end(), [](const SweepEntry& a, const SweepEntry& b) {
            if (*a.exact_value != *b.exact_value) return *a.exact_value > *b.exact_value;
            return id_preferred(a.id, b.id);
        });
    }
    return top;
}

GlobalSupEstimate global_sup_estimate(const Potential& phi, int m_max, int max_period,
                                      int max_digit, int max_len) {
    GlobalSupEstimate g;
    g.m_trajectory = restricted_sup_sweep(phi, m_max, max_period);
    g.invariant_best = g.m_trajectory.back();
    auto ranked = fcf_sweep(phi, max_digit, max_len, 4);
    g.fcf_top = ranked.front();
    g.q_star = std::max(g.invariant_best.best_value, g.fcf_top.value);
    constexpr double kTieTol = 1e-12;
    double diff = g.fcf_top.value - g.invariant_best.best_value;
    if (std::abs(diff) <= kTieTol || g.fcf_top.id.kind == CandidateId::Kind::delta0)
        g.side = std::abs(diff) <= kTieTol ? AttainingSide::tie
                 : diff > 0 ? AttainingSide::tie // delta_0 is itself invariant
                            : AttainingSide::invariant;
    else
        g.side = diff > 0 ? AttainingSide::fcf : AttainingSide::invariant;
    return g;
}

Classification classify(const Potential& phi, const ClassifyBudgets& b) {
    Classification c;
    auto sweep = restricted_sup_sweep(phi, b.m_max, b.max_period);
    auto ranked = fcf_sweep(phi, b.max_digit, b.max_len, 8);
    const SweepEntry& fcf_top = ranked.front();
    const OrbitSearchResult& inv_best = sweep.back();

    double top = std::max(fcf_top.value, inv_best.best_value);
    for (const auto& e : ranked)
        if (e.value >= top - b.stabilize_tol) c.attaining.push_back(e.id);
    if (inv_best.best_value >= top - b.stabilize_tol) {
        CandidateId id;
        id.kind = CandidateId::Kind::periodic;
        id.word = inv_best.best_word;
        c.attaining.push_back(id);
    }

    bool stabilized = sweep.size() >= 2 &&
                      sweep.back().best_value - sweep[sweep.size() - 2].best_value <=
                          b.stabilize_tol;
    if (stabilized && inv_best.best_value >= fcf_top.value + b.margin) {
        c.verdict = Classification::Verdict::essentially_compact;
        int m_star = b.m_max;
        for (const auto& r : sweep)
            if (r.best_value >= inv_best.best_value - b.stabilize_tol) {
                m_star = r.m;
                break;
            }
        c.certificate_m = m_star;
        c.certificate_gap = inv_best.best_value - fcf_top.value;
        c.certificate_id.kind = CandidateId::Kind::periodic;
        c.certificate_id.word = inv_best.best_word;
        c.certificate_value = inv_best.best_value;
        c.note = "restricted sweep dominates FCF candidates; heuristic, not a proof";
        return c;
    }

    double invariant_ub;
    try {
        invariant_ub = restricted_sup_cycle_bound(phi, b.m_max, b.cycle_depth);
    } catch (const BudgetExceeded&) {
        c.note = "cycle-bound budget exceeded; undetermined";
        return c;
    }
    // A genuine rational-maximization verdict needs the FCF side to clear the
    // invariant upper bound AND to dominate the restricted lower bounds; when
    // both sides tie (e.g. a constant potential) the verdict stays open.
    if (fcf_top.value >= invariant_ub - b.stabilize_tol &&
        fcf_top.value > inv_best.best_value + b.margin) {
        c.verdict = Classification::Verdict::rationally_maximized;
        c.certificate_id = fcf_top.id;
        c.certificate_value = fcf_top.value;
        c.certificate_gap = fcf_top.value - invariant_ub;
        c.note = "FCF candidate meets the cycle-graph upper bound; heuristic, not a proof";
        return c;
    }
    c.note = "no side dominates within budgets";
    return c;
}

Example76Report example_7_6(int m_max, int max_period, double tol) {
    Example76Report rep;
    Potential phi = Potential::example76();

    rep.mu1_integral = Rational(1, 2) * (*phi.eval_exact(Rational()) + *phi.eval_exact(Rational(1)));
    rep.delta0_integral = *phi.eval_exact(Rational());

    rep.m_sweep = restricted_sup_sweep(phi, m_max, max_period);
    rep.q_m_bound_ok = true;
    for (const auto& r : rep.m_sweep) {
        double bound = std::max(-1.0, -15.0 / (2.0 * (r.m + 2)));
        rep.m_bounds.push_back(bound);
        if (r.best_value > bound + tol) rep.q_m_bound_ok = false;
    }

    GlobalSupEstimate g = global_sup_estimate(phi, std::min(m_max, 8), max_period, 6, 4);
    rep.q_star = g.q_star;
    rep.side = g.side;

    rep.classification = classify(phi);
    rep.all_ok = rep.mu1_integral == Rational() && rep.delta0_integral == Rational(-1) &&
                 rep.q_m_bound_ok && std::abs(rep.q_star) <= 1e-2 &&
                 rep.side == AttainingSide::fcf &&
                 rep.classification.verdict == Classification::Verdict::rationally_maximized;
    return rep;
}

} // namespace ergopt
