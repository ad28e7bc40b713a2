#include "ergopt/measures.hpp"

#include <algorithm>
#include <set>

namespace ergopt {

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<Rational, Rational>> atoms)
    : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rational total;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        const auto& [pt, wt] = atoms_[i];
        if (!pt.is_point_in_unit() || pt.is_negative())
            throw std::domain_error("DiscreteMeasure: atom outside [0,1]");
        if (wt <= Rational(0)) throw std::domain_error("DiscreteMeasure: nonpositive weight");
        if (i > 0 && atoms_[i - 1].first == pt)
            throw std::domain_error("DiscreteMeasure: duplicate atom");
        total += wt;
    }
    if (total != Rational(1)) throw std::domain_error("DiscreteMeasure: weights must sum to 1");
}

DiscreteMeasure DiscreteMeasure::dirac(const Rational& point) {
    return DiscreteMeasure({{point, Rational(1)}});
}

DiscreteMeasure DiscreteMeasure::convex_combination(
    const std::vector<std::pair<Rational, DiscreteMeasure>>& parts) {
    std::map<Rational, Rational> acc;
    for (const auto& [coeff, mu] : parts) {
        if (coeff.is_negative()) throw std::domain_error("convex_combination: negative coefficient");
        if (coeff.is_zero()) continue;
        for (const auto& [pt, wt] : mu.atoms()) acc[pt] += coeff * wt;
    }
    std::vector<std::pair<Rational, Rational>> atoms(acc.begin(), acc.end());
    return DiscreteMeasure(std::move(atoms));
}

Rational DiscreteMeasure::mass_at(const Rational& point) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                               [](const auto& a, const Rational& p) { return a.first < p; });
    if (it != atoms_.end() && it->first == point) return it->second;
    return Rational();
}

Rational DiscreteMeasure::mass_R1() const {
    Rational total;
    for (const auto& [pt, wt] : atoms_)
        if (pt.is_unit_fraction_ge2()) total += wt;
    return total;
}

Rational DiscreteMeasure::preimage_mass(const Rational& x) const {
    Rational total;
    for (const auto& [pt, wt] : atoms_)
        if (!pt.is_zero() && gauss_step(pt) == x) total += wt;
    return total;
}

RationalOrbit rational_orbit(const Word& w) {
    if (w.empty()) throw std::domain_error("rational_orbit: empty word");
    RationalOrbit orbit;
    orbit.word = w;
    orbit.points.push_back(Rational()); // p_0 = 0
    // Suffix values by prepending digits: [a, rest] = q/(a q + p) for rest = p/q.
    BigInt p = 0, q = 1;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        BigInt np = q;
        BigInt nq = *it * q + p;
        p = np;
        q = nq;
        orbit.points.emplace_back(p, q);
    }
    return orbit;
}

FcfMeasure fcf_measure(const Word& w) {
    RationalOrbit orbit = rational_orbit(w);
    Rational weight(1, static_cast<long long>(orbit.length()));
    std::vector<std::pair<Rational, Rational>> atoms;
    atoms.reserve(orbit.length());
    for (const auto& pt : orbit.points) atoms.emplace_back(pt, weight);
    return {w, DiscreteMeasure(std::move(atoms))};
}

PeriodicOrbitMeasure periodic_measure(const Word& w) {
    if (!is_primitive(w))
        throw std::domain_error("periodic_measure: word is a power of a shorter word");
    PeriodicOrbitMeasure pm;
    pm.points.reserve(w.size());
    Word best = w;
    for (size_t i = 0; i < w.size(); ++i) {
        Word rot = rotate_word(w, i);
        if (rot < best) best = rot;
        pm.points.push_back(periodic_point(rot));
    }
    pm.word = std::move(best);
    return pm;
}

bool alt_form_identity_check(const Word& w) {
    if (!in_class_A(w)) throw std::domain_error("alt_form_identity_check: word not in class A");
    FcfMeasure lhs_m = fcf_measure(f_shift(w));
    FcfMeasure rhs_m = fcf_measure(w);
    long long l = static_cast<long long>(rhs_m.measure.size());
    std::map<Rational, Rational> lhs, rhs;
    for (const auto& [pt, wt] : lhs_m.measure.atoms()) lhs[pt] = Rational(l + 1) * wt;
    for (const auto& [pt, wt] : rhs_m.measure.atoms()) rhs[pt] = Rational(l) * wt;
    rhs[Rational(1)] += Rational(1);
    return lhs == rhs;
}

DiscreteMeasure MembershipCertificate::recombine() const {
    if (!member) throw std::logic_error("recombine: certificate is not a membership");
    std::vector<std::pair<Rational, DiscreteMeasure>> parts;
    if (!delta0_coeff.is_zero())
        parts.emplace_back(delta0_coeff, DiscreteMeasure::dirac(Rational()));
    for (const auto& [word, coeff] : fcf_coeffs)
        parts.emplace_back(coeff, fcf_measure(word).measure);
    return DiscreteMeasure::convex_combination(parts);
}

namespace {

// Checkpoints for condition (ii): atoms plus their G-images inside (0,1).
std::set<Rational> preimage_checkpoints(const DiscreteMeasure& mu) {
    std::set<Rational> pts;
    for (const auto& [pt, wt] : mu.atoms()) {
        if (!pt.is_zero() && pt != Rational(1)) pts.insert(pt);
        if (!pt.is_zero()) {
            Rational img = gauss_step(pt);
            if (!img.is_zero()) pts.insert(img);
        }
    }
    return pts;
}

} // namespace

MembershipCertificate closure_membership(const DiscreteMeasure& mu) {
    MembershipCertificate cert;
    Rational m0 = mu.mass_at(Rational());
    Rational m1 = mu.mass_at(Rational(1));

    if (m0 < m1) {
        cert.violated = Violation::mass_at_1;
        cert.violating_point = Rational(1);
        return cert;
    }
    Rational r1 = mu.mass_R1();
    if (m0 < r1) {
        cert.violated = Violation::mass_R1;
        return cert;
    }
    for (const Rational& x : preimage_checkpoints(mu)) {
        if (mu.mass_at(x) < mu.preimage_mass(x)) {
            cert.violated = Violation::preimage;
            cert.violating_point = x;
            return cert;
        }
    }
    cert.member = true;

    // Peel the mass at 1: nu = (mu - r*delta_1)/(1-r).
    Rational r = m1;
    Rational one(1);
    std::map<Rational, Rational> nu;
    for (const auto& [pt, wt] : mu.atoms()) {
        if (pt == Rational(1)) continue;
        nu[pt] = wt / (one - r);
    }

    auto nu_mass = [&](const Rational& p) {
        auto it = nu.find(p);
        return it == nu.end() ? Rational() : it->second;
    };

    // Constructive decomposition of nu: coefficient of delta_0 is
    // nu({0}) - nu(R_1); the word of x in R_m enters with coefficient
    // (m+1)(nu({x}) - nu(G^{-1}(x))).
    Rational nu_r1;
    for (const auto& [pt, wt] : nu)
        if (pt.is_unit_fraction_ge2()) nu_r1 += wt;
    Rational nu0 = nu_mass(Rational());
    Rational r0 = nu0 - nu_r1;

    std::set<Rational> checkpoints;
    for (const auto& [pt, wt] : nu) {
        if (!pt.is_zero()) checkpoints.insert(pt);
        if (!pt.is_zero()) {
            Rational img = gauss_step(pt);
            if (!img.is_zero()) checkpoints.insert(img);
        }
    }

    std::map<Word, Rational> base; // nu = r0*delta_0 + sum base[w]*mu_w, w in A
    for (const Rational& x : checkpoints) {
        Rational pre;
        for (const auto& [pt, wt] : nu)
            if (!pt.is_zero() && gauss_step(pt) == x) pre += wt;
        Rational excess = nu_mass(x) - pre;
        if (excess.is_zero()) continue;
        Word canon = cf_expand(x).canonical;
        long long m = static_cast<long long>(canon.size());
        base[canon] = Rational(m + 1) * excess;
    }

    // Redistribute the delta_1 mass along f-shifted words (the peeled layer
    // splits as (1-lambda)(1-r)nu + (r/nu0)[r0(d0+d1) + sum c/l (l+1) mu_f(w)]).
    std::map<Word, Rational> out;
    Rational out_delta0;
    if (r.is_zero()) {
        out_delta0 = r0;
        for (auto& [w, c] : base) out[w] += c;
    } else {
        // Membership guarantees (1-r)*nu0 >= r > 0, so nu0 > 0 here.
        Rational scale = r / nu0;
        Rational keep = (one - r / ((one - r) * nu0)) * (one - r);
        out_delta0 = keep * r0;
        for (auto& [w, c] : base) {
            if (!(keep * c).is_zero()) out[w] += keep * c;
            Rational l(static_cast<long long>(w.size()) + 1);
            out[f_shift(w)] += scale * c * (l + one) / l;
        }
        if (!r0.is_zero()) out[Word{1}] += scale * r0 * Rational(2);
    }

    cert.delta0_coeff = out_delta0;
    for (auto& [w, c] : out)
        if (!c.is_zero()) cert.fcf_coeffs.emplace_back(w, c);
    return cert;
}

std::vector<Rational> extended_orbit(const Rational& x) {
    if (x.is_negative() || !x.is_point_in_unit())
        throw std::domain_error("extended_orbit: x outside [0,1]");
    std::set<Rational> pts{Rational(), Rational(1)};
    if (x.is_zero()) return {Rational()};
    Rational y = x;
    while (!y.is_zero()) {
        pts.insert(y);
        y = gauss_step(y);
    }
    return {pts.begin(), pts.end()};
}

std::optional<Rational> integrate_exact(const DiscreteMeasure& mu, const Potential& phi) {
    if (!phi.supports_exact_rational()) return std::nullopt;
    Rational total;
    for (const auto& [pt, wt] : mu.atoms()) total += wt * *phi.eval_exact(pt);
    return total;
}

double integrate(const DiscreteMeasure& mu, const Potential& phi) {
    if (auto exact = integrate_exact(mu, phi)) return exact->to_double();
    double total = 0.0;
    for (const auto& [pt, wt] : mu.atoms()) total += wt.to_double() * phi.eval(pt.to_double());
    return total;
}

double integrate(const PeriodicOrbitMeasure& mu, const Potential& phi) {
    size_t n = mu.period();
    if (phi.supports_surd()) {
        std::optional<QuadField> sum;
        for (const auto& pt : mu.points) {
            QuadField v = *phi.eval_surd(pt);
            sum = sum ? *sum + v : v;
        }
        return sum->scaled(Rational(1, static_cast<long long>(n))).to_double();
    }
    double total = 0.0;
    for (const auto& pt : mu.points) total += phi.eval(pt.to_double());
    return total / static_cast<double>(n);
}

CandidateSet candidate_set_M_x(const Rational& x) {
    if (x.is_negative() || !x.is_point_in_unit())
        throw std::domain_error("candidate_set_M_x: x outside [0,1]");
    CandidateSet cs;
    cs.x = x;
    cs.extended_orbit = extended_orbit(x);

    std::vector<Word> words;
    if (!x.is_zero() && x != Rational(1)) {
        Word a = cf_expand(x).canonical;
        Word b = f_shift(a);
        for (size_t i = 0; i < a.size(); ++i) words.emplace_back(a.begin() + i, a.end());
        for (size_t i = 0; i <= b.size() - 1; ++i) words.emplace_back(b.begin() + i, b.end());
    } else if (x == Rational(1)) {
        words.push_back(Word{1});
    }

    std::vector<DiscreteMeasure> measures;
    std::vector<Word> kept;
    auto push_unique = [&](DiscreteMeasure m, Word w) {
        for (const auto& seen : measures)
            if (seen == m) return;
        measures.push_back(std::move(m));
        kept.push_back(std::move(w));
    };
    for (const Word& w : words) push_unique(fcf_measure(w).measure, w);
    push_unique(DiscreteMeasure::dirac(Rational()), Word{});

    cs.measures = std::move(measures);
    cs.words = std::move(kept);
    return cs;
}

} // namespace ergopt
