#include "ergopt/potential.hpp"

#include <algorithm>
#include <cmath>

namespace ergopt {

PiecewiseAffine::PiecewiseAffine(std::vector<std::pair<Rational, Rational>> knots)
    : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw std::domain_error("PiecewiseAffine: need >= 2 knots");
    for (size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i - 1].first < knots_[i].first))
            throw std::domain_error("PiecewiseAffine: knots must be strictly increasing");
    if (!knots_.front().first.is_zero() || knots_.back().first != Rational(1))
        throw std::domain_error("PiecewiseAffine: knots must span [0,1]");
    kx_.reserve(knots_.size());
    ky_.reserve(knots_.size());
    for (const auto& [x, y] : knots_) {
        kx_.push_back(x.to_double());
        ky_.push_back(y.to_double());
    }
}

size_t PiecewiseAffine::segment_of(const Rational& x) const {
    size_t lo = 0, hi = knots_.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (knots_[mid].first <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Rational PiecewiseAffine::eval(const Rational& x) const {
    size_t i = segment_of(x);
    const auto& [x0, y0] = knots_[i];
    const auto& [x1, y1] = knots_[i + 1];
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

double PiecewiseAffine::eval(double x) const {
    size_t n = kx_.size();
    size_t i = 0;
    while (i + 2 < n && kx_[i + 1] <= x) ++i;
    return ky_[i] + (ky_[i + 1] - ky_[i]) * (x - kx_[i]) / (kx_[i + 1] - kx_[i]);
}

QuadField PiecewiseAffine::eval(const QuadraticSurd& x) const {
    size_t lo = 0, hi = knots_.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (x.cmp(knots_[mid].first) >= 0)
            lo = mid;
        else
            hi = mid;
    }
    const auto& [x0, y0] = knots_[lo];
    const auto& [x1, y1] = knots_[lo + 1];
    Rational slope = (y1 - y0) / (x1 - x0);
    // y0 + slope*(x - x0)
    return (x.to_field() - x0).scaled(slope) + y0;
}

Rational PiecewiseAffine::lipschitz_seminorm() const {
    Rational best;
    for (size_t i = 1; i < knots_.size(); ++i) {
        Rational s = (knots_[i].second - knots_[i - 1].second) /
                     (knots_[i].first - knots_[i - 1].first);
        if (s.abs() > best) best = s.abs();
    }
    return best;
}

Rational PiecewiseAffine::max_on(const Rational& lo, const Rational& hi) const {
    Rational best = eval(lo);
    Rational at_hi = eval(hi);
    if (at_hi > best) best = at_hi;
    for (const auto& [x, y] : knots_)
        if (lo < x && x < hi && y > best) best = y;
    return best;
}

namespace {

double dist_to_sites(double x, const std::vector<double>& sites) {
    double d = 2.0;
    for (double s : sites) d = std::min(d, std::abs(x - s));
    return d;
}

Rational dist_to_sites_exact(const Rational& x, const std::vector<Rational>& sites) {
    Rational d(2);
    for (const auto& s : sites) {
        Rational a = (x - s).abs();
        if (a < d) d = a;
    }
    return d;
}

// min over [lo,hi] of d(., sites); 0 when a site lies inside.
double dist_min_on(double lo, double hi, const std::vector<double>& sites) {
    double best = std::min(dist_to_sites(lo, sites), dist_to_sites(hi, sites));
    for (double s : sites)
        if (lo <= s && s <= hi) return 0.0;
    return best;
}

// max over [lo,hi] of d(., sites): at endpoints or at midpoints of adjacent sites.
double dist_max_on(double lo, double hi, std::vector<double> sites) {
    double best = std::max(dist_to_sites(lo, sites), dist_to_sites(hi, sites));
    std::sort(sites.begin(), sites.end());
    for (size_t i = 1; i < sites.size(); ++i) {
        double mid = 0.5 * (sites[i - 1] + sites[i]);
        if (lo <= mid && mid <= hi) best = std::max(best, dist_to_sites(mid, sites));
    }
    return best;
}

} // namespace

Potential Potential::constant(const Rational& c) {
    Potential p = from_knots({{Rational(), c}, {Rational(1), c}}, 1.0, "const:" + c.str());
    return p;
}

Potential Potential::neg_x() {
    return from_knots({{Rational(), Rational()}, {Rational(1), Rational(-1)}}, 1.0, "neg_x");
}

Potential Potential::example76() {
    return from_knots({{Rational(), Rational(-1)},
                       {Rational(1, 3), Rational(-2)},
                       {Rational(3, 4), Rational(-2)},
                       {Rational(1), Rational(1)}},
                      1.0, "example76");
}

Potential Potential::from_knots(std::vector<std::pair<Rational, Rational>> knots, double alpha,
                                std::string name) {
    Potential p;
    p.pw_.emplace_back(std::move(knots));
    p.alpha_ = alpha;
    p.seminorm_bound_ = p.pw_.back().lipschitz_seminorm().to_double();
    p.name_ = std::move(name);
    return p;
}

Potential Potential::tabulated(GridFunction g, std::string name) {
    Potential p;
    p.alpha_ = g.alpha();
    // Upper bound for the interpolant's seminorm: max slope works for any
    // alpha on [0,1] since |x-y|^alpha >= |x-y|.
    double lip = 0.0;
    for (size_t i = 1; i < g.values().size(); ++i)
        lip = std::max(lip, std::abs(g.values()[i] - g.values()[i - 1]) *
                                static_cast<double>(g.n_cells()));
    p.seminorm_bound_ = lip;
    p.tab_ = std::move(g);
    p.name_ = std::move(name);
    return p;
}

Potential Potential::distance_power(std::vector<Rational> sites, const Rational& coeff,
                                    double alpha, std::string name) {
    if (sites.empty()) throw std::domain_error("distance_power: empty site set");
    Potential p;
    DistanceTerm t;
    t.coeff = coeff;
    t.alpha = alpha;
    t.exact_sites = sites;
    for (const auto& s : sites) t.sites.push_back(s.to_double());
    p.dist_.push_back(std::move(t));
    p.alpha_ = alpha;
    // [d(.,S)^alpha]_alpha <= 1.
    p.seminorm_bound_ = std::abs(coeff.to_double());
    p.name_ = std::move(name);
    return p;
}

Potential Potential::distance_power_approx(std::vector<double> sites, const Rational& coeff,
                                           double alpha, std::string name) {
    if (sites.empty()) throw std::domain_error("distance_power: empty site set");
    Potential p;
    DistanceTerm t;
    t.coeff = coeff;
    t.alpha = alpha;
    t.sites = std::move(sites);
    p.dist_.push_back(std::move(t));
    p.alpha_ = alpha;
    p.seminorm_bound_ = std::abs(coeff.to_double());
    p.name_ = std::move(name);
    return p;
}

Potential Potential::operator+(const Potential& o) const {
    Potential p;
    p.alpha_ = std::min(alpha_, o.alpha_);
    p.seminorm_bound_ = seminorm_bound_ + o.seminorm_bound_;
    p.name_ = name_ + "+" + o.name_;
    p.pw_ = pw_;
    p.pw_.insert(p.pw_.end(), o.pw_.begin(), o.pw_.end());
    p.dist_ = dist_;
    p.dist_.insert(p.dist_.end(), o.dist_.begin(), o.dist_.end());
    if (tab_ && o.tab_) throw std::domain_error("Potential: at most one tabulated part");
    p.tab_ = tab_ ? tab_ : o.tab_;
    return p;
}

double Potential::eval(double x) const {
    double v = 0.0;
    for (const auto& pw : pw_) v += pw.eval(x);
    for (const auto& d : dist_)
        v += d.coeff.to_double() * std::pow(dist_to_sites(x, d.sites), d.alpha);
    if (tab_) v += (*tab_)(x);
    return v;
}

bool Potential::supports_exact_rational() const {
    if (tab_) return false;
    for (const auto& d : dist_)
        if (!d.exact_capable()) return false;
    return true;
}

bool Potential::supports_surd() const { return supports_exact_rational(); }

std::optional<Rational> Potential::eval_exact(const Rational& x) const {
    if (!supports_exact_rational()) return std::nullopt;
    Rational v;
    for (const auto& pw : pw_) v += pw.eval(x);
    for (const auto& d : dist_) v += d.coeff * dist_to_sites_exact(x, *d.exact_sites);
    return v;
}

std::optional<QuadField> Potential::eval_surd(const QuadraticSurd& x) const {
    if (!supports_surd()) return std::nullopt;
    QuadField v = QuadField::from_rational(Rational(), x.disc());
    for (const auto& pw : pw_) v = v + pw.eval(x);
    for (const auto& d : dist_) {
        // d(x,S) = min over sites of |x - s|, decided by exact sign tests.
        std::optional<QuadField> dmin;
        for (const auto& s : *d.exact_sites) {
            QuadField diff = x.to_field() - s;
            if (diff.sign() < 0) diff = -diff;
            if (!dmin || (diff - *dmin).sign() < 0) dmin = diff;
        }
        v = v + dmin->scaled(d.coeff);
    }
    return v;
}

double Potential::sup_on(double lo, double hi) const {
    double v = 0.0;
    for (const auto& pw : pw_)
        v += pw.max_on(Rational::from_double(std::max(0.0, lo)),
                       Rational::from_double(std::min(1.0, hi)))
                 .to_double();
    for (const auto& d : dist_) {
        double c = d.coeff.to_double();
        double dd = c >= 0.0 ? dist_max_on(lo, hi, d.sites) : dist_min_on(lo, hi, d.sites);
        v += c * std::pow(dd, d.alpha);
    }
    if (tab_) v += tab_->sup_on(lo, hi);
    return v;
}

Potential Potential::shifted(const Rational& q) const {
    return *this + constant(-q);
}

} // namespace ergopt
