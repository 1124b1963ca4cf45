#include "trsfund/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trsfund {

YieldCurve::YieldCurve(std::vector<CurvePoint> pillars) : pts_(std::move(pillars)) {
    if (pts_.empty())
        throw std::invalid_argument("YieldCurve: at least one pillar required");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (!std::isfinite(pts_[i].time) || !std::isfinite(pts_[i].rate))
            throw std::invalid_argument("YieldCurve: non-finite pillar");
        if (pts_[i].time < 0.0)
            throw std::invalid_argument("YieldCurve: pillar times must be >= 0");
        if (i > 0 && pts_[i].time <= pts_[i - 1].time)
            throw std::invalid_argument("YieldCurve: pillar times must be strictly increasing");
    }
    prefix_.resize(pts_.size());
    // segment before the first pillar uses the first rate (flat extrapolation)
    prefix_[0] = pts_[0].rate * pts_[0].time;
    for (std::size_t i = 1; i < pts_.size(); ++i)
        prefix_[i] = prefix_[i - 1] + pts_[i - 1].rate * (pts_[i].time - pts_[i - 1].time);
}

YieldCurve YieldCurve::flat(double rate) { return YieldCurve({{0.0, rate}}); }

double YieldCurve::rate(double t) const {
    // last pillar with time <= t, else flat-left
    auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                               [](double v, const CurvePoint& p) { return v < p.time; });
    if (it == pts_.begin())
        return pts_.front().rate;
    return std::prev(it)->rate;
}

double YieldCurve::integral_from_zero(double t) const {
    auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                               [](double v, const CurvePoint& p) { return v < p.time; });
    if (it == pts_.begin())
        return pts_.front().rate * t;
    std::size_t i = static_cast<std::size_t>(std::distance(pts_.begin(), it)) - 1;
    return prefix_[i] + pts_[i].rate * (t - pts_[i].time);
}

double YieldCurve::integral(double a, double b) const {
    return integral_from_zero(b) - integral_from_zero(a);
}

YieldCurve YieldCurve::shifted(double bump) const {
    std::vector<CurvePoint> pts = pts_;
    for (auto& p : pts)
        p.rate += bump;
    return YieldCurve(std::move(pts));
}

double zero_bond(const YieldCurve& curve, double t, double T) {
    if (T < t)
        throw std::domain_error("zero_bond: maturity before valuation time");
    return std::exp(-curve.integral(t, T));
}

double simple_period_rate(const YieldCurve& curve, double t0, double t1) {
    if (!(t1 > t0))
        throw std::domain_error("simple_period_rate: period end must exceed start");
    // P(0,t0)/P(0,t1) = exp(\int_{t0}^{t1} rate)
    return std::expm1(curve.integral(t0, t1)) / (t1 - t0);
}

YieldCurve combine(const std::vector<std::pair<double, const YieldCurve*>>& terms,
                   double offset) {
    if (terms.empty())
        throw std::invalid_argument("combine: no curves given");
    std::vector<double> times;
    for (const auto& [w, c] : terms) {
        (void)w;
        for (const auto& p : c->pillars())
            times.push_back(p.time);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<CurvePoint> pts;
    pts.reserve(times.size());
    for (double t : times) {
        double r = offset;
        for (const auto& [w, c] : terms)
            r += w * c->rate(t);
        pts.push_back({t, r});
    }
    return YieldCurve(std::move(pts));
}

YieldCurve blended_repo_curve(const CurveSet& curves, double alpha) {
    if (alpha < 0.0)
        throw std::invalid_argument("blended_repo_curve: alpha must be >= 0");
    return combine({{-alpha, &curves.funding},
                    {1.0 + alpha, &curves.collateral},
                    {-1.0, &curves.repo_fee}});
}

YieldCurve trs_discount_curve(const CurveSet& curves, double beta) {
    if (beta < 0.0)
        throw std::invalid_argument("trs_discount_curve: beta must be >= 0");
    return combine({{-beta, &curves.funding}, {1.0 + beta, &curves.collateral}});
}

} // namespace trsfund
