#include "trsfund/sweep.hpp"

#include <cstdio>
#include <stdexcept>

namespace trsfund {

namespace {

// Full-precision decimal so CSV consumers can reproduce the doubles exactly.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double spread_at(const Scenario& s) {
    return par_spread(s.contract, s.market, s.curves, s.hedge).first;
}

} // namespace

Scenario apply_axis(const Scenario& base, const std::string& axis, double value) {
    Scenario s = base;
    if (axis == "rho_b") {
        s.market.taxes.div_lend = value;
    } else if (axis == "w") {
        s.hedge.strategy = HedgeStrategy::Blended;
        s.hedge.weight = value;
    } else if (axis == "repo_fee") {
        s.curves.repo_fee = YieldCurve::flat(value);
    } else if (axis == "funding_bump") {
        s.curves.funding = base.curves.funding.shifted(value);
    } else if (axis == "collateral_bump") {
        s.curves.collateral = base.curves.collateral.shifted(value);
    } else if (axis == "spot_bump") {
        s.market.spot = base.market.spot * (1.0 + value);
    } else if (axis == "dividend_bump") {
        for (auto& d : s.market.dividends)
            d.amount *= 1.0 + value;
    } else {
        throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }
    return s;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& sweep) {
    const bool has_series = !sweep.series_axis.empty();
    std::vector<double> series = has_series ? sweep.series : std::vector<double>{0.0};

    std::vector<SweepRow> rows;
    rows.reserve(series.size() * sweep.grid.size());
    for (double sv : series) {
        const Scenario outer =
            has_series ? apply_axis(scenario, sweep.series_axis, sv) : scenario;
        for (double av : sweep.grid) {
            const Scenario point = apply_axis(outer, sweep.axis, av);
            const auto [k, bd] = par_spread(point.contract, point.market, point.curves,
                                            point.hedge);
            rows.push_back({av, sv, k, bd});
        }
    }
    return rows;
}

std::string sweep_csv(const SweepSpec& sweep, const std::vector<SweepRow>& rows) {
    const bool has_series = !sweep.series_axis.empty();
    std::string out = sweep.axis;
    if (has_series)
        out += "," + sweep.series_axis;
    out += ",spread_percent,rate_leg,dividend_tax_cost,tobin_cost,annuity\n";
    for (const auto& r : rows) {
        out += fmt(r.axis_value);
        if (has_series)
            out += "," + fmt(r.series_value);
        out += "," + fmt(r.spread * 100.0);
        out += "," + fmt(r.breakdown.rate_leg);
        out += "," + fmt(r.breakdown.dividend_tax_cost);
        out += "," + fmt(r.breakdown.tobin_cost);
        out += "," + fmt(r.breakdown.annuity);
        out += "\n";
    }
    return out;
}

std::vector<SensitivityRow> run_sensitivities(const Scenario& scenario) {
    const double base = spread_at(scenario);
    std::vector<SensitivityRow> rows;
    rows.push_back({"base", 0.0, base, 0.0});
    const std::pair<const char*, double> bumps[] = {
        {"spot", 0.10},     {"spot", -0.10},     {"dividends", 0.10}, {"dividends", -0.10},
        {"funding", 1e-3},  {"funding", -1e-3},  {"collateral", 1e-3}, {"collateral", -1e-3},
    };
    for (const auto& [name, bump] : bumps) {
        std::string axis;
        if (std::string(name) == "spot")
            axis = "spot_bump";
        else if (std::string(name) == "dividends")
            axis = "dividend_bump";
        else if (std::string(name) == "funding")
            axis = "funding_bump";
        else
            axis = "collateral_bump";
        const double k = spread_at(apply_axis(scenario, axis, bump));
        rows.push_back({name, bump, k, (k - base) * 1e4});
    }
    return rows;
}

std::string sensitivities_csv(const std::vector<SensitivityRow>& rows) {
    std::string out = "name,bump,spread_percent,delta_bp\n";
    for (const auto& r : rows)
        out += r.name + "," + fmt(r.bump) + "," + fmt(r.spread * 100.0) + "," +
               fmt(r.delta_bp) + "\n";
    return out;
}

} // namespace trsfund
