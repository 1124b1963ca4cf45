#pragma once

#include "trsfund/curve.hpp"
#include "trsfund/market.hpp"

namespace trsfund {

/// Equity forward under a hedge strategy: the spot grows at the strategy's
/// funding rate and drops by the after-tax amount at each dividend date,
/// F(T) = S/P(T;z) - sum_{t_k < T} P(t_k;z)/P(T;z) * (1-rho)*Q_k.
/// A dividend exactly at T is not yet in F(T); the drop applies after t_k.
class ForwardCurve {
  public:
    ForwardCurve(const MarketSnapshot& market, const HedgeSpec& hedge, const CurveSet& curves);

    double value(double T) const;
    /// True when dividends exceed the grown spot; the value is still returned
    /// as-is, this only flags the economically inconsistent input.
    bool negative(double T) const { return value(T) < 0.0; }

    double spot() const { return spot_; }
    double dividend_tax() const { return tax_; }
    const YieldCurve& growth_curve() const { return growth_; }
    const DividendSchedule& dividends() const { return divs_; }

  private:
    YieldCurve growth_;
    DividendSchedule divs_;
    double spot_;
    double tax_;
};

double forward_price(const MarketSnapshot& market, const HedgeSpec& hedge,
                     const CurveSet& curves, double T);

} // namespace trsfund
