#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace trsfund {

struct CurvePoint {
    double time = 0.0;
    double rate = 0.0;
};

/// Deterministic yield curve with a piecewise-flat instantaneous short rate.
/// The rate on [t_i, t_{i+1}) is pillars[i].rate; flat extrapolation on both
/// ends. Negative rates are fine. Immutable after construction.
class YieldCurve {
  public:
    explicit YieldCurve(std::vector<CurvePoint> pillars);
    static YieldCurve flat(double rate);

    double rate(double t) const;
    /// Exact \int_a^b rate(u) du (closed form, no quadrature).
    double integral(double a, double b) const;

    const std::vector<CurvePoint>& pillars() const { return pts_; }
    YieldCurve shifted(double bump) const;

  private:
    double integral_from_zero(double t) const;

    std::vector<CurvePoint> pts_;
    std::vector<double> prefix_; // integral from 0 to pts_[i].time
};

/// P_t(T) = exp(-\int_t^T rate). Throws std::domain_error if T < t.
double zero_bond(const YieldCurve& curve, double t, double T);

/// Simply compounded rate over [t0, t1] implied by the curve's forward bond:
/// (P(0,t0)/P(0,t1) - 1) / (t1 - t0). Requires t1 > t0.
double simple_period_rate(const YieldCurve& curve, double t0, double t1);

/// Pointwise linear combination sum_k w_k * curve_k + offset, built on the
/// union of the input pillar grids so the result is exact.
YieldCurve combine(const std::vector<std::pair<double, const YieldCurve*>>& terms,
                   double offset = 0.0);

/// The five market curves every valuation needs, all anchored at t = 0.
struct CurveSet {
    YieldCurve funding;    // unsecured bank funding, r
    YieldCurve collateral; // rate paid on posted collateral, c
    YieldCurve ois;        // overnight benchmark, e
    YieldCurve repo_fee;   // stock lending/borrowing fee, l
    YieldCurve libor;      // projection curve for the floating leg
};

/// Growth rate of a repo-funded stock position with over-collateralization
/// alpha: -alpha*r + (1+alpha)*c - l.
YieldCurve blended_repo_curve(const CurveSet& curves, double alpha);

/// Discount curve for swap cash flows under collateralization haircut beta:
/// -beta*r + (1+beta)*c.
YieldCurve trs_discount_curve(const CurveSet& curves, double beta);

} // namespace trsfund
