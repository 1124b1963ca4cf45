#include "trsfund/validation.hpp"

#include "trsfund/forward.hpp"
#include "trsfund/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace trsfund {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ValidationRow row(std::string name, double expected, double actual, double tolerance) {
    const bool pass = std::abs(actual - expected) <= tolerance;
    return {std::move(name), expected, actual, tolerance, pass};
}

HedgeSpec long_hedge(const Scenario& s) {
    if (s.hedge.strategy != HedgeStrategy::StockBorrowing)
        return s.hedge;
    return {HedgeStrategy::StockLending, 1.0, s.hedge.alpha};
}

HedgeSpec short_hedge(const Scenario& s) {
    return {HedgeStrategy::StockBorrowing, 1.0, s.hedge.alpha};
}

// Mean and standard error honouring the generator's antithetic pairing.
std::pair<double, double> mean_se(const std::vector<double>& per_path, bool antithetic) {
    std::vector<double> units;
    if (antithetic) {
        units.reserve(per_path.size() / 2);
        for (std::size_t i = 0; i + 1 < per_path.size(); i += 2)
            units.push_back(0.5 * (per_path[i] + per_path[i + 1]));
    } else {
        units = per_path;
    }
    const double n = static_cast<double>(units.size());
    double sum = 0.0;
    for (double v : units)
        sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : units)
        ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

ValidationRow forward_row(const char* name, const Scenario& s, HedgeStrategy strategy) {
    const HedgeSpec hedge{strategy, 1.0, s.hedge.alpha};
    SimulationSpec spec = s.sim;
    spec.paths = std::min<std::uint64_t>(spec.paths, 200000);
    if (spec.antithetic && (spec.paths & 1u))
        --spec.paths;
    spec.grid = s.contract.equity_dates;

    const PathSet paths = simulate_paths(s.market, hedge, s.curves, spec);
    const ForwardCurve fwd(s.market, hedge, s.curves);
    double worst = 0.0;
    std::vector<double> terminal(paths.paths());
    for (double t : s.contract.equity_dates) {
        if (t == 0.0)
            continue;
        const std::size_t idx =
            std::lower_bound(paths.grid.begin(), paths.grid.end(), t) - paths.grid.begin();
        for (std::size_t p = 0; p < paths.paths(); ++p)
            terminal[p] = paths.at(p, idx);
        const auto [mean, se] = mean_se(terminal, spec.antithetic);
        worst = std::max(worst, std::abs(mean - fwd.value(t)) / (3.0 * se));
    }
    return row(name, 0.0, worst, 1.0);
}

ValidationRow martingale_row(const Scenario& s) {
    SimulationSpec spec = s.sim;
    spec.paths = std::min<std::uint64_t>(spec.paths, 200000);
    if (spec.antithetic && (spec.paths & 1u))
        --spec.paths;
    const double maturity = s.contract.equity_dates.back();
    spec.grid = {0.0, maturity};

    const HedgeSpec hedge = long_hedge(s);
    const PathSet paths = simulate_paths(s.market, hedge, s.curves, spec);
    const YieldCurve growth = effective_hedge_curve(s.curves, hedge);
    const double rho = effective_dividend_tax(s.market.taxes, hedge);
    double carried = 0.0; // deflated after-tax dividends, deterministic
    for (const auto& d : s.market.dividends)
        if (d.time < maturity)
            carried += zero_bond(growth, 0.0, d.time) * (1.0 - rho) * d.amount;
    const double pz = zero_bond(growth, 0.0, maturity);
    const std::size_t last = paths.grid.size() - 1;
    std::vector<double> deflated(paths.paths());
    for (std::size_t p = 0; p < paths.paths(); ++p)
        deflated[p] = paths.at(p, last) * pz + carried;
    const auto [mean, se] = mean_se(deflated, spec.antithetic);
    return row("martingale_deflated_price", 0.0, std::abs(mean - s.market.spot) / (3.0 * se),
               1.0);
}

ValidationRow antithetic_row(const Scenario& s, const TRSContract& parred,
                             const HedgeSpec& hedge) {
    SimulationSpec on = s.sim;
    on.antithetic = true;
    if (on.paths & 1u)
        --on.paths;
    SimulationSpec off = on;
    off.antithetic = false;
    const double se_on = mc_price_trs(parred, s.market, s.curves, hedge, on).se;
    const double se_off = mc_price_trs(parred, s.market, s.curves, hedge, off).se;
    return row("antithetic_se_ratio", 0.0, se_on / se_off, 0.95);
}

ValidationRow legs_row(const Scenario& s, const TRSContract& parred, const HedgeSpec& hedge) {
    const SimulationResult mc = mc_price_trs(parred, s.market, s.curves, hedge, s.sim);

    const YieldCurve discount = trs_discount_curve(s.curves, parred.beta);
    const ForwardCurve fwd(s.market, hedge, s.curves);
    const double spot = s.market.spot;
    const double sign = parred.direction == Direction::Receiver ? 1.0 : -1.0;
    const double n = parred.notional;
    const auto& eq = parred.equity_dates;

    double perf = 0.0;
    for (std::size_t i = 1; i < eq.size(); ++i)
        perf += zero_bond(discount, 0.0, eq[i]) * (fwd.value(eq[i]) - fwd.value(eq[i - 1]));
    perf *= sign * n / spot;

    double div = 0.0;
    for (const auto& d : s.market.dividends)
        if (d.time >= eq.front() && d.time < eq.back())
            div += zero_bond(discount, 0.0, d.time) * (1.0 - s.market.taxes.div_swap) *
                   d.amount;
    div *= sign * n / spot;

    double funding = 0.0;
    const auto& fd = parred.funding_dates;
    for (std::size_t j = 1; j < fd.size(); ++j)
        funding += (fd[j] - fd[j - 1]) *
                   (simple_period_rate(s.curves.libor, fd[j - 1], fd[j]) + parred.spread) *
                   zero_bond(discount, 0.0, fd[j]) * fwd.value(eta(fd[j], eq));
    funding *= -sign * n / spot;

    double tobin = 0.0;
    if (parred.tobin_enabled) {
        tobin = parred.direction == Direction::Receiver
                    ? -s.market.taxes.tobin * zero_bond(discount, 0.0, eq.back()) *
                          fwd.value(eq.back()) / spot
                    : -s.market.taxes.tobin;
        tobin *= n;
    }

    const double floor = 1e-12 * n;
    double worst = 0.0;
    const std::pair<const LegEstimate*, double> legs[] = {{&mc.performance, perf},
                                                          {&mc.dividends, div},
                                                          {&mc.funding, funding},
                                                          {&mc.tobin, tobin}};
    for (const auto& [est, analytic] : legs)
        worst = std::max(worst,
                         std::abs(est->value - analytic) / (3.0 * est->se + floor));
    return row("legs_vs_analytic", 0.0, worst, 1.0);
}

} // namespace

std::vector<ValidationRow> run_validation(const Scenario& s) {
    std::vector<ValidationRow> rows;

    TRSContract resetting = s.contract;
    resetting.direction = Direction::Payer;
    resetting.notional_mode = NotionalMode::Resetting;
    const HedgeSpec payer_hedge = long_hedge(s);
    resetting.spread = par_spread(resetting, s.market, s.curves, payer_hedge).first;
    rows.push_back([&] {
        const SimulationResult mc =
            mc_price_trs(resetting, s.market, s.curves, payer_hedge, s.sim);
        return row("par_value_resetting_payer", 0.0, mc.value, 3.0 * mc.se);
    }());

    TRSContract constant = s.contract;
    constant.direction = Direction::Receiver;
    constant.notional_mode = NotionalMode::Constant;
    const HedgeSpec recv_hedge = short_hedge(s);
    constant.spread = par_spread(constant, s.market, s.curves, recv_hedge).first;
    rows.push_back([&] {
        const SimulationResult mc =
            mc_price_trs(constant, s.market, s.curves, recv_hedge, s.sim);
        // small allowance: the analytic Tobin options ignore in-period
        // dividend drops by construction
        return row("par_value_constant_receiver", 0.0, mc.value,
                   3.0 * mc.se + 5e-5 * constant.notional);
    }());

    rows.push_back(forward_row("forward_buy_and_hold", s, HedgeStrategy::BuyAndHold));
    rows.push_back(forward_row("forward_stock_lending", s, HedgeStrategy::StockLending));
    rows.push_back(forward_row("forward_stock_borrowing", s, HedgeStrategy::StockBorrowing));
    rows.push_back(martingale_row(s));
    rows.push_back(antithetic_row(s, resetting, payer_hedge));
    rows.push_back(legs_row(s, resetting, payer_hedge));
    return rows;
}

bool all_passed(const std::vector<ValidationRow>& rows) {
    for (const auto& r : rows)
        if (!r.pass)
            return false;
    return true;
}

std::string validation_csv(const std::vector<ValidationRow>& rows) {
    std::string out = "name,expected,actual,tolerance,pass\n";
    for (const auto& r : rows)
        out += r.name + "," + fmt(r.expected) + "," + fmt(r.actual) + "," + fmt(r.tolerance) +
               "," + (r.pass ? "1" : "0") + "\n";
    return out;
}

std::string validation_report(const std::vector<ValidationRow>& rows) {
    std::ostringstream out;
    for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-28s %s  actual % .6e  tolerance % .6e\n",
                      r.name.c_str(), r.pass ? "PASS" : "FAIL", r.actual, r.tolerance);
        out << line;
    }
    out << (all_passed(rows) ? "all checks passed\n" : "CHECKS FAILED\n");
    return out.str();
}

} // namespace trsfund
