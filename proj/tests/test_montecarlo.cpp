#include "trsfund/montecarlo.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace trsfund;

namespace {

CurveSet flat_set(double r, double c, double e, double l, double lib) {
    return {YieldCurve::flat(r), YieldCurve::flat(c), YieldCurve::flat(e), YieldCurve::flat(l),
            YieldCurve::flat(lib)};
}

MarketSnapshot market_73(double vol) {
    MarketSnapshot m;
    m.spot = 73.0;
    m.vol = vol;
    return m;
}

TRSContract monthly(Direction dir, NotionalMode mode) {
    TRSContract c;
    c.direction = dir;
    c.notional_mode = mode;
    c.equity_dates = uniform_schedule(1.0, 12);
    c.funding_dates = c.equity_dates;
    return c;
}

const HedgeSpec kBH{HedgeStrategy::BuyAndHold, 1.0, 0.0};
const HedgeSpec kSB{HedgeStrategy::StockBorrowing, 1.0, 0.05};

} // namespace

TEST_CASE("simulation grid is the union of schedules and dividend dates") {
    TRSContract c = monthly(Direction::Payer, NotionalMode::Resetting);
    c.funding_dates = {0.0, 0.4, 1.0};
    MarketSnapshot m = market_73(0.2);
    m.dividends = {{0.1, 1.0}, {0.52, 1.0}, {1.7, 1.0}};

    const auto grid = simulation_grid(c, m);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK(grid.size() == 16); // 13 equity dates + 0.4 + two in-horizon dividends
    for (double t : {0.4, 0.1, 0.52})
        CHECK(std::count(grid.begin(), grid.end(), t) == 1);
    CHECK(std::count(grid.begin(), grid.end(), 1.7) == 0);
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("zero-volatility paths follow the hedge carry exactly") {
    const CurveSet curves = flat_set(0.02, 0.015, 0.01, 0.0, 0.02);
    MarketSnapshot m = market_73(0.0);
    m.dividends = {{0.5, 3.2}};
    m.taxes.div_hold = 0.15;

    SimulationSpec spec;
    spec.paths = 4;
    spec.grid = {0.3, 0.5, 0.8};

    const auto paths = simulate_paths(m, kBH, curves, spec);
    REQUIRE(paths.grid.size() == 4); // 0 and the dividend date get inserted
    const double cum = 73.0 * std::exp(0.02 * 0.5);
    const double ex = (cum - 0.85 * 3.2) * std::exp(0.02 * 0.3);
    for (std::size_t p = 0; p < paths.paths(); ++p) {
        CHECK(paths.valid[p] == 1);
        CHECK(paths.at(p, 0) == 73.0);
        // a fixing on the dividend date itself still sees the cum price
        CHECK(paths.at(p, 2) == doctest::Approx(cum).epsilon(1e-14));
        CHECK(paths.at(p, 3) == doctest::Approx(ex).epsilon(1e-14));
    }
}

TEST_CASE("zero-volatility pricing collapses to the analytic value") {
    const CurveSet curves = flat_set(0.025, 0.015, 0.01, 0.0, 0.02);
    const MarketSnapshot m = market_73(0.0);
    TRSContract c = monthly(Direction::Payer, NotionalMode::Constant);
    c.tobin_enabled = false;
    c.notional = 1e6;
    c.spread = 0.002;

    SimulationSpec spec;
    spec.paths = 64;
    // step-by-step compounding regroups the exponentials, so a few ulp per
    // coupon survive against the closed form
    const auto res = mc_price_trs(c, m, curves, kBH, spec);
    CHECK(res.value ==
          doctest::Approx(trs_value(c, m, curves, kBH)).epsilon(1e-10));
    CHECK(res.se <= 1e-4); // identical paths, only summation noise left
    CHECK(res.paths == 64);
    CHECK(res.invalid == 0);
}

TEST_CASE("legs sum to the value estimate exactly") {
    const CurveSet curves = flat_set(0.02, 0.015, 0.01, 0.001, 0.02);
    MarketSnapshot m = market_73(0.25);
    m.dividends = {{0.1, 1.6}, {0.52, 2.1}};
    m.taxes = {0.15, 0.05, 0.10, 0.001};
    TRSContract c = monthly(Direction::Receiver, NotionalMode::Constant);
    c.spread = 0.001;

    SimulationSpec spec;
    spec.paths = 2000;
    const auto res = mc_price_trs(c, m, curves, kSB, spec);
    CHECK(res.value == ((res.performance.value + res.dividends.value) + res.funding.value) +
                           res.tobin.value);
    CHECK(res.dividends.value > 0.0); // receiver collects the pass-through
    CHECK(res.tobin.value < 0.0);     // the hedge tax is always a drag
}

TEST_CASE("value is affine in the contract spread along fixed paths") {
    const CurveSet curves = flat_set(0.02, 0.015, 0.01, 0.0, 0.02);
    const MarketSnapshot m = market_73(0.25);
    TRSContract c = monthly(Direction::Payer, NotionalMode::Constant);
    c.tobin_enabled = false;

    SimulationSpec spec;
    spec.paths = 2000;
    c.spread = 0.001;
    const double v1 = mc_price_trs(c, m, curves, kBH, spec).value;
    c.spread = 0.003;
    const double v2 = mc_price_trs(c, m, curves, kBH, spec).value;

    const YieldCurve y = trs_discount_curve(curves, c.beta);
    double annuity = 0.0;
    for (std::size_t j = 1; j < c.funding_dates.size(); ++j)
        annuity += (c.funding_dates[j] - c.funding_dates[j - 1]) *
                   zero_bond(y, 0.0, c.funding_dates[j]);
    // the payer receives Libor + K, so more K means more value
    CHECK(v2 - v1 == doctest::Approx(0.002 * annuity).epsilon(1e-10));
}

TEST_CASE("same seed reproduces the estimate bit for bit across thread counts") {
    const CurveSet curves = flat_set(0.02, 0.015, 0.01, 0.001, 0.02);
    MarketSnapshot m = market_73(0.25);
    m.dividends = {{0.1, 1.6}};
    m.taxes = {0.15, 0.05, 0.0, 0.001};
    TRSContract c = monthly(Direction::Payer, NotionalMode::Resetting);
    c.spread = 0.0015;

    SimulationSpec spec;
    spec.paths = 20000; // three blocks, so the reduction order matters
    spec.seed = 7;

    const auto a = mc_price_trs(c, m, curves, kBH, spec);
    const auto b = mc_price_trs(c, m, curves, kBH, spec);
    spec.threads = 4;
    const auto d = mc_price_trs(c, m, curves, kBH, spec);

    CHECK(a.value == b.value);
    CHECK(a.se == b.se);
    CHECK(a.value == d.value);
    CHECK(a.se == d.se);
    CHECK(a.performance.value == d.performance.value);
    CHECK(a.tobin.se == d.tobin.se);

    spec.seed = 8;
    spec.threads = 1;
    CHECK(mc_price_trs(c, m, curves, kBH, spec).value != a.value);
}

TEST_CASE("antithetic pairing tightens the standard error") {
    const CurveSet curves = flat_set(0.02, 0.015, 0.01, 0.0, 0.02);
    const MarketSnapshot m = market_73(0.25);
    TRSContract c = monthly(Direction::Payer, NotionalMode::Resetting);
    c.tobin_enabled = false;
    const auto [k, bd] = par_spread(c, m, curves, kBH);
    c.spread = k;

    SimulationSpec spec;
    spec.paths = 20000;
    spec.antithetic = false;
    const double plain = mc_price_trs(c, m, curves, kBH, spec).se;
    spec.antithetic = true;
    const double paired = mc_price_trs(c, m, curves, kBH, spec).se;
    CHECK(paired < 0.9 * plain);
}

TEST_CASE("dividend-free receiver prices to par within the Monte Carlo error") {
    // without dividends the rebalancing-option values are exact, so the par
    // spread has no model error left and the simulation must agree
    const CurveSet curves = flat_set(0.025, 0.02, 0.015, 0.001, 0.021);
    const MarketSnapshot mkt = [] {
        MarketSnapshot m = market_73(0.3);
        m.taxes.tobin = 0.002;
        return m;
    }();
    TRSContract c = monthly(Direction::Receiver, NotionalMode::Constant);
    c.notional = 1e6;
    const auto [k, bd] = par_spread(c, mkt, curves, kSB);
    c.spread = k;

    SimulationSpec spec;
    spec.paths = 50000;
    spec.seed = 20190418;
    const auto res = mc_price_trs(c, mkt, curves, kSB, spec);
    CHECK(std::fabs(res.value) <= 3.0 * res.se);
}

TEST_CASE("paths wiped out by a dividend abort the estimate") {
    const CurveSet curves = flat_set(0.02, 0.02, 0.02, 0.0, 0.02);
    MarketSnapshot m = market_73(0.2);
    m.dividends = {{0.5, 200.0}};
    TRSContract c = monthly(Direction::Payer, NotionalMode::Resetting);

    SimulationSpec spec;
    spec.paths = 1000;
    CHECK_THROWS_AS(mc_price_trs(c, m, curves, kBH, spec), std::runtime_error);

    spec.grid = {1.0};
    CHECK_THROWS_AS(simulate_paths(m, kBH, curves, spec), std::runtime_error);

    SimulationSpec bad;
    bad.paths = 3; // odd count cannot be paired
    CHECK_THROWS_AS(mc_price_trs(c, market_73(0.2), curves, kBH, bad), std::invalid_argument);
}
