#include "trsfund/trs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trsfund {

namespace {

void check_schedule(const std::vector<double>& dates, const char* what) {
    if (dates.size() < 2)
        throw std::invalid_argument(std::string(what) + ": need at least two dates");
    if (dates.front() != 0.0)
        throw std::invalid_argument(std::string(what) + ": schedule must start at 0");
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (!(dates[i] > dates[i - 1]))
            throw std::invalid_argument(std::string(what) + ": dates must strictly increase");
        if (!std::isfinite(dates[i]))
            throw std::invalid_argument(std::string(what) + ": non-finite date");
    }
}

double direction_sign(Direction d) { return d == Direction::Receiver ? 1.0 : -1.0; }

// Index i such that eq[i-1] <= t < eq[i], or 0 when t falls outside the
// contract's life.
std::size_t period_of(const std::vector<double>& eq, double t) {
    auto it = std::upper_bound(eq.begin(), eq.end(), t);
    if (it == eq.begin() || it == eq.end())
        return 0;
    return static_cast<std::size_t>(it - eq.begin());
}

struct PricingContext {
    YieldCurve discount; // y
    YieldCurve growth;   // z
    ForwardCurve forward;
    double rho;   // dividend tax borne by the hedge
    double rho_t; // dividend tax written into the swap
    double tau;

    PricingContext(const TRSContract& contract, const MarketSnapshot& market,
                   const CurveSet& curves, const HedgeSpec& hedge)
        : discount(trs_discount_curve(curves, contract.beta)),
          growth(effective_hedge_curve(curves, hedge)), forward(market, hedge, curves),
          rho(effective_dividend_tax(market.taxes, hedge)), rho_t(market.taxes.div_swap),
          tau(contract.tobin_enabled ? market.taxes.tobin : 0.0) {}

    double py(double t) const { return zero_bond(discount, 0.0, t); }
    double pz(double t) const { return zero_bond(growth, 0.0, t); }
};

void validate_inputs(const TRSContract& contract, const MarketSnapshot& market,
                     const HedgeSpec& hedge) {
    validate_contract(contract);
    validate_market(market);
    validate_hedge(hedge);
    check_pairing(contract.direction, hedge.strategy);
}

// Tax asymmetry between what the hedge earns on a dividend and what the swap
// passes through, discounted and adjusted for the drop carried to the period
// end. `inv_spot` is E[1/S_fix] for the period containing the dividend.
double dividend_asymmetry(const PricingContext& cx, double t_k, double amount,
                          double period_end, double inv_spot) {
    const double carry = (cx.py(period_end) / cx.pz(period_end)) * (cx.pz(t_k) / cx.py(t_k));
    return cx.py(t_k) * amount * inv_spot * ((1.0 - cx.rho_t) - (1.0 - cx.rho) * carry);
}

// Hedge rebalancing / unwind transaction-tax value. The receiver's short is
// bought back piecewise on up-moves and in full at maturity; the payer's long
// is bought at inception and topped up on down-moves.
double tobin_block_constant(const TRSContract& contract, const MarketSnapshot& market,
                            const PricingContext& cx) {
    if (cx.tau == 0.0)
        return 0.0;
    const auto& eq = contract.equity_dates;
    const std::size_t n = eq.size() - 1;
    if (contract.direction == Direction::Receiver) {
        double sum = 0.0;
        for (std::size_t i = 1; i < n; ++i)
            sum += performance_option_price({eq[i - 1], eq[i], OptionType::Call}, cx.growth,
                                            cx.discount, market.vol, contract.expectation);
        sum += cx.py(eq[n]) * expected_terminal_ratio(cx.forward, market.vol, eq[n - 1], eq[n],
                                                      contract.expectation);
        return -cx.tau * sum;
    }
    double sum = 1.0; // inception purchase, paid at t = 0
    for (std::size_t i = 1; i < n; ++i)
        sum += performance_option_price({eq[i - 1], eq[i], OptionType::Put}, cx.growth,
                                        cx.discount, market.vol, contract.expectation);
    return cx.tau * sum;
}

double tobin_block_resetting(const TRSContract& contract, const PricingContext& cx) {
    if (cx.tau == 0.0)
        return 0.0;
    const double maturity = contract.equity_dates.back();
    if (contract.direction == Direction::Receiver)
        return -cx.tau * cx.py(maturity) * cx.forward.value(maturity) /
               cx.forward.spot();
    return cx.tau;
}

SpreadBreakdown breakdown_constant(const TRSContract& contract, const MarketSnapshot& market,
                                   const CurveSet& curves, const HedgeSpec& hedge) {
    const PricingContext cx(contract, market, curves, hedge);
    const auto& eq = contract.equity_dates;
    const auto& fd = contract.funding_dates;

    SpreadBreakdown bd;
    for (std::size_t i = 1; i < eq.size(); ++i) {
        const double x = eq[i] - eq[i - 1];
        bd.rate_leg += x * cx.py(eq[i]) * simple_period_rate(cx.growth, eq[i - 1], eq[i]);
    }
    for (std::size_t j = 1; j < fd.size(); ++j) {
        const double x = fd[j] - fd[j - 1];
        const double df = cx.py(fd[j]);
        bd.rate_leg -= x * df * simple_period_rate(curves.libor, fd[j - 1], fd[j]);
        bd.annuity += x * df;
    }
    for (const auto& d : market.dividends) {
        const std::size_t i = period_of(eq, d.time);
        if (i == 0)
            continue;
        const double inv_spot =
            expected_inverse_spot(cx.forward, market.vol, eq[i - 1], contract.expectation);
        bd.dividend_tax_cost += dividend_asymmetry(cx, d.time, d.amount, eq[i], inv_spot);
    }
    bd.tobin_cost = tobin_block_constant(contract, market, cx);
    return bd;
}

SpreadBreakdown breakdown_resetting_general(const TRSContract& contract,
                                            const MarketSnapshot& market,
                                            const CurveSet& curves, const HedgeSpec& hedge) {
    const PricingContext cx(contract, market, curves, hedge);
    const auto& eq = contract.equity_dates;
    const auto& fd = contract.funding_dates;
    const double spot = cx.forward.spot();

    SpreadBreakdown bd;
    for (std::size_t i = 1; i < eq.size(); ++i) {
        const double x = eq[i] - eq[i - 1];
        const double z = simple_period_rate(cx.growth, eq[i - 1], eq[i]);
        bd.rate_leg += x * z * cx.py(eq[i]) / cx.pz(eq[i - 1]);
        // dividends already paid depress every later period's base notional
        for (const auto& d : market.dividends) {
            if (!(d.time < eq[i - 1]))
                break;
            bd.dividend_tax_cost -= x * z * (cx.py(eq[i]) / cx.pz(eq[i - 1])) * cx.pz(d.time) *
                                    (1.0 - cx.rho) * d.amount / spot;
        }
    }
    for (std::size_t j = 1; j < fd.size(); ++j) {
        const double x = fd[j] - fd[j - 1];
        const double factor = cx.py(fd[j]) * cx.forward.value(eta(fd[j], eq)) / spot;
        bd.rate_leg -= x * simple_period_rate(curves.libor, fd[j - 1], fd[j]) * factor;
        bd.annuity += x * factor;
    }
    for (const auto& d : market.dividends) {
        const std::size_t i = period_of(eq, d.time);
        if (i == 0)
            continue;
        bd.dividend_tax_cost += dividend_asymmetry(cx, d.time, d.amount, eq[i], 1.0 / spot);
    }
    bd.tobin_cost += tobin_block_resetting(contract, cx);
    return bd;
}

SpreadBreakdown breakdown_resetting_aligned(const TRSContract& contract,
                                            const MarketSnapshot& market,
                                            const CurveSet& curves, const HedgeSpec& hedge) {
    const PricingContext cx(contract, market, curves, hedge);
    const auto& eq = contract.equity_dates;
    const double spot = cx.forward.spot();

    SpreadBreakdown bd;
    for (std::size_t i = 1; i < eq.size(); ++i) {
        const double x = eq[i] - eq[i - 1];
        const double zl = simple_period_rate(cx.growth, eq[i - 1], eq[i]) -
                          simple_period_rate(curves.libor, eq[i - 1], eq[i]);
        bd.rate_leg += x * zl * cx.py(eq[i]) / cx.pz(eq[i - 1]);
        bd.annuity += x * cx.py(eq[i]) * cx.forward.value(eq[i - 1]) / spot;
        for (const auto& d : market.dividends) {
            if (!(d.time < eq[i - 1]))
                break;
            bd.dividend_tax_cost -= x * zl * (cx.py(eq[i]) / cx.pz(eq[i - 1])) * cx.pz(d.time) *
                                    (1.0 - cx.rho) * d.amount / spot;
        }
    }
    for (const auto& d : market.dividends) {
        const std::size_t i = period_of(eq, d.time);
        if (i == 0)
            continue;
        bd.dividend_tax_cost += dividend_asymmetry(cx, d.time, d.amount, eq[i], 1.0 / spot);
    }
    bd.tobin_cost += tobin_block_resetting(contract, cx);
    return bd;
}

} // namespace

void validate_contract(const TRSContract& contract) {
    check_schedule(contract.equity_dates, "equity schedule");
    check_schedule(contract.funding_dates, "funding schedule");
    if (contract.equity_dates.back() != contract.funding_dates.back())
        throw std::invalid_argument("equity and funding schedules must share the maturity");
    if (!(contract.beta >= 0.0) || !std::isfinite(contract.beta))
        throw std::invalid_argument("beta must be >= 0");
    if (!(contract.notional > 0.0) || !std::isfinite(contract.notional))
        throw std::invalid_argument("notional must be > 0");
    if (!std::isfinite(contract.spread))
        throw std::invalid_argument("spread must be finite");
}

void check_pairing(Direction direction, HedgeStrategy strategy) {
    const bool short_hedge = strategy == HedgeStrategy::StockBorrowing;
    if (direction == Direction::Receiver && !short_hedge)
        throw std::invalid_argument(
            "a performance receiver hedges with stock borrowing; long hedges are for payers");
    if (direction == Direction::Payer && short_hedge)
        throw std::invalid_argument(
            "a performance payer hedges long (buy-and-hold, lending, or a blend)");
}

std::vector<double> uniform_schedule(double maturity, int periods) {
    if (!(maturity > 0.0) || periods < 1)
        throw std::invalid_argument("uniform_schedule: need maturity > 0 and periods >= 1");
    std::vector<double> dates(static_cast<std::size_t>(periods) + 1);
    for (int i = 0; i <= periods; ++i)
        dates[static_cast<std::size_t>(i)] = maturity * i / periods;
    return dates;
}

double eta(double T, const std::vector<double>& equity_dates) {
    auto it = std::lower_bound(equity_dates.begin(), equity_dates.end(), T);
    if (it == equity_dates.begin())
        throw std::invalid_argument("eta: no equity date strictly before T");
    return *(it - 1);
}

std::pair<double, SpreadBreakdown> par_spread_constant_notional(const TRSContract& contract,
                                                                const MarketSnapshot& market,
                                                                const CurveSet& curves,
                                                                const HedgeSpec& hedge) {
    validate_inputs(contract, market, hedge);
    const SpreadBreakdown bd = breakdown_constant(contract, market, curves, hedge);
    return {bd.par(), bd};
}

std::pair<double, SpreadBreakdown> par_spread_resetting(const TRSContract& contract,
                                                        const MarketSnapshot& market,
                                                        const CurveSet& curves,
                                                        const HedgeSpec& hedge) {
    validate_inputs(contract, market, hedge);
    const SpreadBreakdown bd = contract.equity_dates == contract.funding_dates
                                   ? breakdown_resetting_aligned(contract, market, curves, hedge)
                                   : breakdown_resetting_general(contract, market, curves, hedge);
    return {bd.par(), bd};
}

std::pair<double, SpreadBreakdown> par_spread(const TRSContract& contract,
                                              const MarketSnapshot& market,
                                              const CurveSet& curves, const HedgeSpec& hedge) {
    return contract.notional_mode == NotionalMode::Constant
               ? par_spread_constant_notional(contract, market, curves, hedge)
               : par_spread_resetting(contract, market, curves, hedge);
}

double trs_value(const TRSContract& contract, const MarketSnapshot& market,
                 const CurveSet& curves, const HedgeSpec& hedge) {
    validate_inputs(contract, market, hedge);
    const double sign = direction_sign(contract.direction);

    if (contract.notional_mode == NotionalMode::Constant) {
        const SpreadBreakdown bd = breakdown_constant(contract, market, curves, hedge);
        const double num = bd.rate_leg + bd.dividend_tax_cost + bd.tobin_cost;
        return contract.notional * sign * (num - contract.spread * bd.annuity);
    }

    const PricingContext cx(contract, market, curves, hedge);
    const auto& eq = contract.equity_dates;
    const auto& fd = contract.funding_dates;
    const double spot = cx.forward.spot();

    double legs = 0.0;
    for (std::size_t i = 1; i < eq.size(); ++i)
        legs += cx.py(eq[i]) * (cx.forward.value(eq[i]) - cx.forward.value(eq[i - 1])) / spot;
    for (const auto& d : market.dividends) {
        if (period_of(eq, d.time) == 0)
            continue;
        legs += cx.py(d.time) * (1.0 - cx.rho_t) * d.amount / spot;
    }
    for (std::size_t j = 1; j < fd.size(); ++j) {
        const double x = fd[j] - fd[j - 1];
        const double libor = simple_period_rate(curves.libor, fd[j - 1], fd[j]);
        legs -= x * (libor + contract.spread) * cx.py(fd[j]) *
                cx.forward.value(eta(fd[j], eq)) / spot;
    }
    double cost = 0.0;
    if (cx.tau != 0.0)
        cost = contract.direction == Direction::Receiver
                   ? cx.tau * cx.py(eq.back()) * cx.forward.value(eq.back()) / spot
                   : cx.tau;
    return contract.notional * (sign * legs - cost);
}

namespace detail {
std::pair<double, SpreadBreakdown> par_spread_resetting_general(const TRSContract& contract,
                                                                const MarketSnapshot& market,
                                                                const CurveSet& curves,
                                                                const HedgeSpec& hedge) {
    validate_inputs(contract, market, hedge);
    const SpreadBreakdown bd = breakdown_resetting_general(contract, market, curves, hedge);
    return {bd.par(), bd};
}
} // namespace detail

} // namespace trsfund
