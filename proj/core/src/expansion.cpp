#include "trsfund/expansion.hpp"

#include "trsfund/black.hpp"
#include "trsfund/forward.hpp"

#include <algorithm>
#include <stdexcept>

namespace trsfund {

namespace {

double blend_weight(const HedgeSpec& hedge) {
    switch (hedge.strategy) {
    case HedgeStrategy::BuyAndHold:
        return 0.0;
    case HedgeStrategy::StockLending:
    case HedgeStrategy::StockBorrowing:
        return 1.0;
    case HedgeStrategy::Blended:
        return hedge.weight;
    }
    throw std::logic_error("unknown hedge strategy");
}

} // namespace

std::size_t SpreadDecomposition::period_index(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin() || it == times.end())
        throw std::invalid_argument("time outside the decomposition schedule");
    return static_cast<std::size_t>(it - times.begin()) - 1;
}

SpreadDecomposition build_spread_decomposition(const std::vector<double>& dates,
                                               const CurveSet& curves) {
    if (dates.size() < 2)
        throw std::invalid_argument("need at least one period");
    SpreadDecomposition d;
    d.times = dates;
    const YieldCurve fee_over_ois = combine({{1.0, &curves.ois}, {1.0, &curves.repo_fee}});
    for (std::size_t i = 1; i < dates.size(); ++i) {
        const double t0 = dates[i - 1];
        const double t1 = dates[i];
        const double e = simple_period_rate(curves.ois, t0, t1);
        d.ois_rate.push_back(e);
        d.d_funding.push_back(simple_period_rate(curves.funding, t0, t1) - e);
        d.d_collateral.push_back(simple_period_rate(curves.collateral, t0, t1) - e);
        d.d_repo.push_back(simple_period_rate(fee_over_ois, t0, t1) - e);
        d.d_libor.push_back(simple_period_rate(curves.libor, t0, t1) - e);
    }
    d.source = curves;
    return d;
}

double gamma(const HedgeSpec& hedge, double t_k, double T_i,
             const SpreadDecomposition& decomp, double beta, const TaxSpec& taxes) {
    if (!(t_k <= T_i))
        throw std::invalid_argument("gamma: dividend after the period end");
    validate_hedge(hedge);
    const double w = blend_weight(hedge);
    const std::size_t i = decomp.period_index(t_k);
    const double rc = decomp.d_funding[i] - decomp.d_collateral[i];
    const double lend = (beta - hedge.alpha) * rc - decomp.d_repo[i];
    const double hold = (1.0 + beta) * rc;
    return effective_dividend_tax(taxes, hedge) - taxes.div_swap -
           (w * lend + (1.0 - w) * hold) * (T_i - t_k);
}

double approx_par_spread(const HedgeSpec& hedge, const TRSContract& contract,
                         const MarketSnapshot& market, const SpreadDecomposition& decomp) {
    validate_contract(contract);
    validate_market(market);
    validate_hedge(hedge);
    check_pairing(contract.direction, hedge.strategy);
    if (contract.equity_dates != contract.funding_dates)
        throw std::invalid_argument("first-order spread needs aligned schedules");
    if (contract.equity_dates != decomp.times)
        throw std::invalid_argument("decomposition was built for a different schedule");
    if (!decomp.source)
        throw std::invalid_argument("decomposition lacks source curves");

    const CurveSet& curves = *decomp.source;
    const auto& eq = contract.equity_dates;
    const std::size_t n = decomp.periods();
    const double w = blend_weight(hedge);
    const double alpha = hedge.alpha;
    auto pe = [&](double t) { return zero_bond(curves.ois, 0.0, t); };

    double num = 0.0;
    double annuity = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dz = w * (-alpha * decomp.d_funding[i] +
                               (1.0 + alpha) * decomp.d_collateral[i] - decomp.d_repo[i]) +
                          (1.0 - w) * decomp.d_funding[i];
        const double x = eq[i + 1] - eq[i];
        num += x * pe(eq[i + 1]) * (dz - decomp.d_libor[i]);
        annuity += x * pe(eq[i + 1]);
    }

    const ForwardCurve fwd(market, hedge, curves);
    for (const auto& d : market.dividends) {
        if (!(d.time >= eq.front()) || !(d.time < eq.back()))
            continue;
        const std::size_t i = decomp.period_index(d.time);
        const double eqs = expected_dividend_over_spot(fwd, market.vol, eq[i], d.amount,
                                                       contract.expectation);
        num += pe(d.time) * eqs *
               gamma(hedge, d.time, eq[i + 1], decomp, contract.beta, market.taxes);
    }

    if (contract.tobin_enabled && market.taxes.tobin != 0.0) {
        const YieldCurve growth = effective_hedge_curve(curves, hedge);
        const double tau = market.taxes.tobin;
        if (contract.direction == Direction::Receiver) {
            double sum = 0.0;
            for (std::size_t i = 1; i + 1 < eq.size(); ++i)
                sum += performance_option_price({eq[i - 1], eq[i], OptionType::Call}, growth,
                                                curves.ois, market.vol,
                                                ExpectationMode::ForwardIntrinsic);
            sum += pe(eq.back()) * expected_terminal_ratio(fwd, market.vol, eq[eq.size() - 2],
                                                           eq.back(),
                                                           ExpectationMode::ForwardIntrinsic);
            num -= tau * sum;
        } else {
            double sum = 1.0;
            for (std::size_t i = 1; i + 1 < eq.size(); ++i)
                sum += performance_option_price({eq[i - 1], eq[i], OptionType::Put}, growth,
                                                curves.ois, market.vol,
                                                ExpectationMode::ForwardIntrinsic);
            num += tau * sum;
        }
    }
    return num / annuity;
}

} // namespace trsfund
