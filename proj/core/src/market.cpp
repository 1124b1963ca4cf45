#include "trsfund/market.hpp"

#include <cmath>
#include <stdexcept>

namespace trsfund {

namespace {

void check_rate(double v, const char* name) {
    if (!(v >= 0.0) || v >= 1.0)
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1)");
}

} // namespace

void validate_market(const MarketSnapshot& market) {
    if (!(market.spot > 0.0))
        throw std::invalid_argument("market.spot must be > 0");
    if (!(market.vol >= 0.0) || !std::isfinite(market.vol))
        throw std::invalid_argument("market.vol must be >= 0");
    check_rate(market.taxes.div_hold, "taxes.div_hold");
    check_rate(market.taxes.div_lend, "taxes.div_lend");
    check_rate(market.taxes.div_swap, "taxes.div_swap");
    if (!(market.taxes.tobin >= 0.0) || market.taxes.tobin >= 1.0)
        throw std::invalid_argument("taxes.tobin must lie in [0, 1)");
    double prev = 0.0;
    for (const auto& d : market.dividends) {
        if (!(d.time > prev))
            throw std::invalid_argument("dividend times must be strictly increasing and > 0");
        if (!(d.amount >= 0.0) || !std::isfinite(d.amount))
            throw std::invalid_argument("dividend amounts must be >= 0");
        prev = d.time;
    }
}

void validate_hedge(const HedgeSpec& hedge) {
    if (!(hedge.alpha >= 0.0))
        throw std::invalid_argument("hedge.alpha must be >= 0");
    if (hedge.strategy == HedgeStrategy::Blended &&
        (!(hedge.weight >= 0.0) || !(hedge.weight <= 1.0)))
        throw std::invalid_argument("hedge.weight must lie in [0, 1]");
}

double effective_dividend_tax(const TaxSpec& taxes, const HedgeSpec& hedge) {
    switch (hedge.strategy) {
    case HedgeStrategy::BuyAndHold:
        return taxes.div_hold;
    case HedgeStrategy::StockLending:
    case HedgeStrategy::StockBorrowing:
        return taxes.div_lend;
    case HedgeStrategy::Blended:
        if (hedge.weight == 0.0)
            return taxes.div_hold;
        if (hedge.weight == 1.0)
            return taxes.div_lend;
        return hedge.weight * taxes.div_lend + (1.0 - hedge.weight) * taxes.div_hold;
    }
    throw std::logic_error("effective_dividend_tax: unknown strategy");
}

YieldCurve effective_hedge_curve(const CurveSet& curves, const HedgeSpec& hedge) {
    validate_hedge(hedge);
    switch (hedge.strategy) {
    case HedgeStrategy::BuyAndHold:
        return curves.funding;
    case HedgeStrategy::StockLending:
    case HedgeStrategy::StockBorrowing:
        return blended_repo_curve(curves, hedge.alpha);
    case HedgeStrategy::Blended: {
        if (hedge.weight == 0.0)
            return curves.funding;
        YieldCurve lend = blended_repo_curve(curves, hedge.alpha);
        if (hedge.weight == 1.0)
            return lend;
        return combine({{hedge.weight, &lend}, {1.0 - hedge.weight, &curves.funding}});
    }
    }
    throw std::logic_error("effective_hedge_curve: unknown strategy");
}

} // namespace trsfund
