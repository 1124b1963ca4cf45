#pragma once

#include "trsfund/curve.hpp"

#include <vector>

namespace trsfund {

struct Dividend {
    double time = 0.0;   // year fraction, must be > 0
    double amount = 0.0; // gross cash amount per share
};

using DividendSchedule = std::vector<Dividend>;

/// Dividend tax rates per holding channel plus the transaction tax on stock
/// purchases. All rates are fractions of the gross amount.
struct TaxSpec {
    double div_hold = 0.0; // withheld when holding the stock outright
    double div_lend = 0.0; // applied to lent/borrowed stock dividend flows
    double div_swap = 0.0; // contractual rate on the swap dividend pass-through
    double tobin = 0.0;    // transaction tax per unit of stock bought
};

struct MarketSnapshot {
    double spot = 0.0;
    double vol = 0.0; // lognormal volatility, annualized
    DividendSchedule dividends;
    TaxSpec taxes;
};

/// Throws std::invalid_argument on out-of-range inputs. A tobin rate above 1%
/// is legal but surprising; the scenario loader warns about it.
void validate_market(const MarketSnapshot& market);

enum class HedgeStrategy { BuyAndHold, StockLending, StockBorrowing, Blended };

struct HedgeSpec {
    HedgeStrategy strategy = HedgeStrategy::BuyAndHold;
    double weight = 1.0; // Blended only: 0 = buy and hold, 1 = stock lending
    double alpha = 0.0;  // repo over-collateralization
};

void validate_hedge(const HedgeSpec& hedge);

/// Dividend tax rate the hedge actually suffers: div_hold for buy-and-hold,
/// div_lend for stock lending/borrowing, the convex mix for a blend.
double effective_dividend_tax(const TaxSpec& taxes, const HedgeSpec& hedge);

/// Growth curve of the hedge position: funding curve for buy-and-hold, the
/// repo-adjusted curve for stock lending/borrowing, pointwise mix for blends.
/// Blend weights 0 and 1 return the pure curves so downstream results match
/// the pure strategies exactly.
YieldCurve effective_hedge_curve(const CurveSet& curves, const HedgeSpec& hedge);

} // namespace trsfund
