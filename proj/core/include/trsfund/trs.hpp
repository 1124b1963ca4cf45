#pragma once

#include "trsfund/black.hpp"
#include "trsfund/curve.hpp"
#include "trsfund/forward.hpp"
#include "trsfund/market.hpp"

#include <utility>
#include <vector>

namespace trsfund {

// Receiver gets the equity performance and pays Libor + K; Payer is the
// mirror image. The hedge pairing is fixed: a receiver desk shorts the stock
// (stock borrowing), a payer desk holds it (buy-and-hold, lending, or a
// blend). Other pairings are rejected.
enum class Direction { Receiver, Payer };

// Constant: notional fixed, share quantity rebalanced at every reset.
// Resetting: share quantity fixed at inception, notional tracks the spot.
enum class NotionalMode { Constant, Resetting };

struct TRSContract {
    Direction direction = Direction::Payer;
    NotionalMode notional_mode = NotionalMode::Resetting;
    std::vector<double> equity_dates;  // T_0 = 0 < T_1 < ... < T_n
    std::vector<double> funding_dates; // T'_0 = 0 < ... < T'_m = T_n
    double beta = 0.0;                 // collateral haircut on the swap
    bool tobin_enabled = true;
    double spread = 0.0; // fixed K used by trs_value / mc pricing
    double notional = 1.0;
    ExpectationMode expectation = ExpectationMode::Black;
};

void validate_contract(const TRSContract& contract);

// Throws std::invalid_argument when the direction cannot be hedged with the
// given strategy (receiver needs stock borrowing, payer anything long).
void check_pairing(Direction direction, HedgeStrategy strategy);

// {0, maturity/n, 2 maturity/n, ..., maturity}
std::vector<double> uniform_schedule(double maturity, int periods);

// Largest equity date strictly below T; the notional of the funding period
// ending at T was fixed on that date.
double eta(double T, const std::vector<double>& equity_dates);

// Numerator pieces of the par spread, all per unit notional:
// K = (rate_leg + dividend_tax_cost + tobin_cost) / annuity.
struct SpreadBreakdown {
    double rate_leg = 0.0;          // equity financing minus Libor projection
    double dividend_tax_cost = 0.0; // tax asymmetry between hedge and pass-through
    double tobin_cost = 0.0;        // transaction-tax terms, signed
    double annuity = 0.0;           // sensitivity of value to a unit of K
    double par() const { return (rate_leg + dividend_tax_cost + tobin_cost) / annuity; }
};

std::pair<double, SpreadBreakdown> par_spread_constant_notional(const TRSContract& contract,
                                                                const MarketSnapshot& market,
                                                                const CurveSet& curves,
                                                                const HedgeSpec& hedge);

// Aligned schedules take the simplified closed form; anything else routes to
// the general formula. Both give the same spread on aligned inputs.
std::pair<double, SpreadBreakdown> par_spread_resetting(const TRSContract& contract,
                                                        const MarketSnapshot& market,
                                                        const CurveSet& curves,
                                                        const HedgeSpec& hedge);

std::pair<double, SpreadBreakdown> par_spread(const TRSContract& contract,
                                              const MarketSnapshot& market,
                                              const CurveSet& curves, const HedgeSpec& hedge);

// Analytic value of the contract at contract.spread. For the resetting mode
// this is evaluated straight off the forward curve rather than through the
// grouped par-spread sums, so par/value consistency is a real cross-check.
double trs_value(const TRSContract& contract, const MarketSnapshot& market,
                 const CurveSet& curves, const HedgeSpec& hedge);

namespace detail {
// General (schedule-agnostic) resetting formula, exposed so tests can pit it
// against the simplified aligned form.
std::pair<double, SpreadBreakdown> par_spread_resetting_general(const TRSContract& contract,
                                                                const MarketSnapshot& market,
                                                                const CurveSet& curves,
                                                                const HedgeSpec& hedge);
} // namespace detail

} // namespace trsfund
