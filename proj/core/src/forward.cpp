#include "trsfund/forward.hpp"

namespace trsfund {

ForwardCurve::ForwardCurve(const MarketSnapshot& market, const HedgeSpec& hedge,
                           const CurveSet& curves)
    : growth_(effective_hedge_curve(curves, hedge)), divs_(market.dividends),
      spot_(market.spot), tax_(effective_dividend_tax(market.taxes, hedge)) {
    validate_market(market);
}

double ForwardCurve::value(double T) const {
    double f = spot_ / zero_bond(growth_, 0.0, T);
    for (const auto& d : divs_) {
        if (!(d.time < T))
            break;
        f -= zero_bond(growth_, 0.0, d.time) / zero_bond(growth_, 0.0, T) *
             (1.0 - tax_) * d.amount;
    }
    return f;
}

double forward_price(const MarketSnapshot& market, const HedgeSpec& hedge,
                     const CurveSet& curves, double T) {
    return ForwardCurve(market, hedge, curves).value(T);
}

} // namespace trsfund
