#include "trsfund/trs.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace trsfund;

namespace {

CurveSet flat_set(double r, double c, double e, double l, double lib) {
    return {YieldCurve::flat(r), YieldCurve::flat(c), YieldCurve::flat(e), YieldCurve::flat(l),
            YieldCurve::flat(lib)};
}

MarketSnapshot clean_market() {
    MarketSnapshot m;
    m.spot = 73.0;
    m.vol = 0.2;
    return m;
}

MarketSnapshot rich_market() {
    MarketSnapshot m;
    m.spot = 73.0;
    m.vol = 0.25;
    m.dividends = {{0.1, 1.6}, {0.52, 2.1}};
    m.taxes = {0.15, 0.05, 0.10, 0.001};
    return m;
}

CurveSet rich_curves() {
    return {YieldCurve({{0.0, 0.0030}, {0.5, 0.0035}}),
            YieldCurve({{0.0, -0.0040}, {0.5, -0.0035}}),
            YieldCurve({{0.0, -0.0040}, {0.5, -0.0035}}),
            YieldCurve::flat(0.001),
            YieldCurve({{0.0, -0.0032}, {0.5, -0.0027}})};
}

TRSContract monthly_contract(Direction dir, NotionalMode mode) {
    TRSContract c;
    c.direction = dir;
    c.notional_mode = mode;
    c.equity_dates = uniform_schedule(1.0, 12);
    c.funding_dates = c.equity_dates;
    return c;
}

const HedgeSpec kBH{HedgeStrategy::BuyAndHold, 1.0, 0.0};
const HedgeSpec kSL{HedgeStrategy::StockLending, 1.0, 0.05};
const HedgeSpec kSB{HedgeStrategy::StockBorrowing, 1.0, 0.05};

// flat growth rate whose monthly simple rate sits 10bp over flat 2% Libor
constexpr double kTenBpOver2 = 0.020998293195745064;

} // namespace

TEST_CASE("contract validation") {
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    CHECK_NOTHROW(validate_contract(c));

    c.equity_dates[0] = 0.01;
    CHECK_THROWS_AS(validate_contract(c), std::invalid_argument);

    c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    c.funding_dates = {0.0, 0.5, 0.5, 1.0};
    CHECK_THROWS_AS(validate_contract(c), std::invalid_argument);

    c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    c.funding_dates = {0.0, 0.9};
    CHECK_THROWS_AS(validate_contract(c), std::invalid_argument);

    c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    c.beta = -0.1;
    CHECK_THROWS_AS(validate_contract(c), std::invalid_argument);

    c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    c.notional = 0.0;
    CHECK_THROWS_AS(validate_contract(c), std::invalid_argument);

    CHECK_THROWS_AS(uniform_schedule(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_schedule(-1.0, 12), std::invalid_argument);
}

TEST_CASE("hedge pairing is hard-wired to the direction") {
    CHECK_NOTHROW(check_pairing(Direction::Receiver, HedgeStrategy::StockBorrowing));
    CHECK_THROWS_AS(check_pairing(Direction::Receiver, HedgeStrategy::BuyAndHold),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_pairing(Direction::Receiver, HedgeStrategy::Blended),
                    std::invalid_argument);
    CHECK_NOTHROW(check_pairing(Direction::Payer, HedgeStrategy::BuyAndHold));
    CHECK_NOTHROW(check_pairing(Direction::Payer, HedgeStrategy::Blended));
    CHECK_THROWS_AS(check_pairing(Direction::Payer, HedgeStrategy::StockBorrowing),
                    std::invalid_argument);

    const TRSContract c = monthly_contract(Direction::Receiver, NotionalMode::Constant);
    CHECK_THROWS_AS(par_spread(c, clean_market(), flat_set(0.02, 0.02, 0.02, 0.0, 0.02), kBH),
                    std::invalid_argument);
}

TEST_CASE("last fixing date before a payment") {
    const auto grid = uniform_schedule(1.0, 12);
    CHECK(eta(0.125, grid) == grid[1]);
    CHECK(eta(grid[1], grid) == 0.0);
    CHECK(eta(1.0, grid) == grid[11]);
    CHECK(eta(0.0001, grid) == 0.0);
    CHECK_THROWS_AS(eta(0.0, grid), std::invalid_argument);
}

TEST_CASE("par spread vanishes when the hedge carry matches Libor") {
    const CurveSet curves = flat_set(0.02, 0.02, 0.02, 0.0, 0.02);
    const MarketSnapshot m = clean_market();

    for (auto mode : {NotionalMode::Constant, NotionalMode::Resetting}) {
        TRSContract payer = monthly_contract(Direction::Payer, mode);
        payer.tobin_enabled = false;
        CHECK(std::fabs(par_spread(payer, m, curves, kBH).first) < 1e-12);

        TRSContract receiver = monthly_contract(Direction::Receiver, mode);
        receiver.tobin_enabled = false;
        CHECK(std::fabs(par_spread(receiver, m, curves, kSB).first) < 1e-12);
    }
}

TEST_CASE("par spread picks up a uniform carry spread one for one") {
    const MarketSnapshot m = clean_market();

    // payer hedged buy-and-hold: growth = funding curve
    const CurveSet bh_curves = flat_set(kTenBpOver2, 0.015, 0.01, 0.0, 0.02);
    for (auto mode : {NotionalMode::Constant, NotionalMode::Resetting}) {
        TRSContract c = monthly_contract(Direction::Payer, mode);
        c.tobin_enabled = false;
        CHECK(par_spread(c, m, bh_curves, kBH).first ==
              doctest::Approx(0.001).epsilon(1e-10));
    }

    // receiver hedged with borrowed stock: growth = repo-blended curve; the
    // discount curve moves with beta but the par spread must not care
    CurveSet sb_curves = flat_set(0.03, kTenBpOver2, 0.01, 0.0, 0.02);
    for (double beta : {0.0, 0.1}) {
        TRSContract c = monthly_contract(Direction::Receiver, NotionalMode::Constant);
        c.tobin_enabled = false;
        c.beta = beta;
        CHECK(par_spread(c, m, sb_curves, {HedgeStrategy::StockBorrowing, 1.0, 0.0}).first ==
              doctest::Approx(0.001).epsilon(1e-10));
    }
}

TEST_CASE("resetting transaction-tax terms in closed form") {
    const CurveSet curves = flat_set(0.02, 0.02, 0.02, 0.0, 0.02);
    MarketSnapshot m = clean_market();
    m.taxes.tobin = 0.001;

    TRSContract payer = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    const auto [kp, bdp] = par_spread(payer, m, curves, kBH);
    CHECK(bdp.tobin_cost == 0.001); // undiscounted inception purchase
    CHECK(kp == doctest::Approx(0.001 / bdp.annuity).epsilon(1e-14));
    CHECK(kp > 0.001); // annuity < 1 under positive rates

    // receiver: single unwind purchase at maturity, discounted at y; with
    // y = z the two par spreads mirror each other
    TRSContract receiver = monthly_contract(Direction::Receiver, NotionalMode::Resetting);
    const auto [kr, bdr] = par_spread(receiver, m, curves, kSB);
    CHECK(kr == doctest::Approx(-kp).epsilon(1e-12));
    CHECK(bdr.tobin_cost == doctest::Approx(-0.001).epsilon(1e-12));
}

TEST_CASE("constant-notional transaction-tax terms in the zero-vol limit") {
    const CurveSet curves = flat_set(0.02, 0.02, 0.02, 0.0, 0.02);
    MarketSnapshot m = clean_market();
    m.taxes.tobin = 0.001;

    // positive carry: every down-move put is worthless at intrinsic, leaving
    // only the inception purchase
    TRSContract payer = monthly_contract(Direction::Payer, NotionalMode::Constant);
    payer.expectation = ExpectationMode::ForwardIntrinsic;
    const auto [kp, bdp] = par_spread(payer, m, curves, kBH);
    CHECK(bdp.tobin_cost == 0.001);
    CHECK(kp == doctest::Approx(0.001 / bdp.annuity).epsilon(1e-14));

    // receiver: the rebalancing calls plus terminal unwind telescope to the
    // inception sale when y = z
    TRSContract receiver = monthly_contract(Direction::Receiver, NotionalMode::Constant);
    receiver.expectation = ExpectationMode::ForwardIntrinsic;
    const auto [kr, bdr] = par_spread(receiver, m, curves, kSB);
    CHECK(bdr.tobin_cost == doctest::Approx(-0.001).epsilon(1e-12));
    CHECK(kr == doctest::Approx(-kp).epsilon(1e-12));

    // Black mode adds strictly positive option time value on both sides
    payer.expectation = ExpectationMode::Black;
    receiver.expectation = ExpectationMode::Black;
    CHECK(par_spread(payer, m, curves, kBH).second.tobin_cost > 0.001);
    CHECK(par_spread(receiver, m, curves, kSB).second.tobin_cost < -0.001);
}

TEST_CASE("aligned resetting shortcut agrees with the general formula") {
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    c.beta = 0.1;
    const HedgeSpec blend{HedgeStrategy::Blended, 0.3, 0.05};
    const auto aligned = par_spread_resetting(c, rich_market(), rich_curves(), blend);
    const auto general =
        detail::par_spread_resetting_general(c, rich_market(), rich_curves(), blend);
    CHECK(aligned.first == doctest::Approx(general.first).epsilon(1e-12));
    CHECK(aligned.second.annuity == doctest::Approx(general.second.annuity).epsilon(1e-12));
}

TEST_CASE("par spread zeroes the contract value") {
    const MarketSnapshot m = rich_market();
    const CurveSet curves = rich_curves();
    const HedgeSpec blend{HedgeStrategy::Blended, 0.4, 0.05};

    struct Case {
        Direction dir;
        NotionalMode mode;
        HedgeSpec hedge;
    };
    const Case cases[] = {{Direction::Payer, NotionalMode::Constant, kBH},
                          {Direction::Payer, NotionalMode::Constant, blend},
                          {Direction::Payer, NotionalMode::Resetting, kSL},
                          {Direction::Receiver, NotionalMode::Constant, kSB},
                          {Direction::Receiver, NotionalMode::Resetting, kSB}};
    for (const auto& cs : cases) {
        TRSContract c = monthly_contract(cs.dir, cs.mode);
        c.beta = 0.05;
        c.notional = 5e6;
        const auto [k, bd] = par_spread(c, m, curves, cs.hedge);
        c.spread = k;
        CHECK(std::fabs(trs_value(c, m, curves, cs.hedge)) <=
              1e-10 * bd.annuity * c.notional);

        // affine in the spread with slope -annuity (receiver) / +annuity (payer)
        const double h = 1e-4;
        c.spread = k + h;
        const double up = trs_value(c, m, curves, cs.hedge);
        c.spread = k - h;
        const double dn = trs_value(c, m, curves, cs.hedge);
        const double slope = (up - dn) / (2 * h) / c.notional;
        const double want = cs.dir == Direction::Receiver ? -bd.annuity : bd.annuity;
        CHECK(slope == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("one basis point over par costs the receiver one basis point of annuity") {
    TRSContract c = monthly_contract(Direction::Receiver, NotionalMode::Resetting);
    const auto [k, bd] = par_spread(c, rich_market(), rich_curves(), kSB);
    c.spread = k + 1e-4;
    CHECK(trs_value(c, rich_market(), rich_curves(), kSB) ==
          doctest::Approx(-1e-4 * bd.annuity).epsilon(1e-10));
}

TEST_CASE("misaligned funding schedule routes through the general machinery") {
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    c.funding_dates = {0.0, 0.4, 0.7, 1.0};
    c.beta = 0.1;
    const HedgeSpec blend{HedgeStrategy::Blended, 0.3, 0.05};

    const auto [k, bd] = par_spread(c, rich_market(), rich_curves(), blend);
    c.spread = k;
    // the value route prices straight off the forward curve, so this is a
    // genuine cross-check of the grouped par-spread algebra
    CHECK(std::fabs(trs_value(c, rich_market(), rich_curves(), blend)) <= 1e-12 * bd.annuity);
}

TEST_CASE("spread breakdown reconstructs the par spread") {
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Constant);
    const auto [k, bd] = par_spread(c, rich_market(), rich_curves(), kSL);
    CHECK(k == doctest::Approx((bd.rate_leg + bd.dividend_tax_cost + bd.tobin_cost) /
                               bd.annuity)
                   .epsilon(1e-14));
}

TEST_CASE("blend endpoints reproduce the pure strategies bit for bit") {
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    const MarketSnapshot m = rich_market();
    const CurveSet curves = rich_curves();
    CHECK(par_spread(c, m, curves, {HedgeStrategy::Blended, 0.0, 0.05}).first ==
          par_spread(c, m, curves, {HedgeStrategy::BuyAndHold, 1.0, 0.05}).first);
    CHECK(par_spread(c, m, curves, {HedgeStrategy::Blended, 1.0, 0.05}).first ==
          par_spread(c, m, curves, {HedgeStrategy::StockLending, 1.0, 0.05}).first);
}

TEST_CASE("par spread is smooth in the blend weight") {
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Resetting);
    const MarketSnapshot m = rich_market();
    const CurveSet curves = rich_curves();
    std::vector<double> k;
    k.reserve(1001);
    for (int i = 0; i <= 1000; ++i)
        k.push_back(par_spread(c, m, curves, {HedgeStrategy::Blended, i / 1000.0, 0.05}).first);
    // no kinks or jumps anywhere, endpoints included: the curvature of a
    // smooth K(w) sampled at h = 1e-3 is far below any discontinuity
    double max_second = 0.0;
    for (std::size_t i = 1; i + 1 < k.size(); ++i)
        max_second = std::max(max_second, std::fabs(k[i + 1] - 2.0 * k[i] + k[i - 1]));
    CHECK(max_second < 1e-8);
    CHECK(std::fabs(k.back() - k.front()) < 0.05); // sane overall scale
}

TEST_CASE("dividend exactly on a reset date belongs to the period it opens") {
    // exaggerated funding/collateral gap so period membership visibly moves
    // the carry correction
    const CurveSet curves = flat_set(0.10, 0.01, 0.01, 0.0, 0.01);
    MarketSnapshot m = clean_market();
    m.taxes.div_hold = 0.15;
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Constant);
    c.tobin_enabled = false;
    const double reset = c.equity_dates[6];

    auto par_with_div_at = [&](double t) {
        m.dividends = {{t, 3.2}};
        return par_spread(c, m, curves, kBH).first;
    };
    const double on = par_with_div_at(reset);
    CHECK(std::fabs(on - par_with_div_at(reset + 1e-10)) < 1e-7);
    CHECK(std::fabs(on - par_with_div_at(reset - 1e-10)) > 1e-5);
}

TEST_CASE("funding bumps move the par spread through the hedge carry") {
    // negative-rate environment, dividend mid first period
    const CurveSet base{YieldCurve({{0.0, 0.0030}, {0.25, 0.0032}, {0.5, 0.0035}, {0.75, 0.0038}}),
                        YieldCurve({{0.0, -0.0040}, {0.25, -0.0038}, {0.5, -0.0035}, {0.75, -0.0032}}),
                        YieldCurve({{0.0, -0.0040}, {0.25, -0.0038}, {0.5, -0.0035}, {0.75, -0.0032}}),
                        YieldCurve::flat(0.001),
                        YieldCurve({{0.0, -0.0032}, {0.25, -0.0030}, {0.5, -0.0027}, {0.75, -0.0024}})};
    MarketSnapshot m = clean_market();
    m.dividends = {{1.0 / 24, 3.2}};
    m.taxes = {0.15, 0.05, 0.0, 0.001};
    TRSContract c = monthly_contract(Direction::Payer, NotionalMode::Resetting);

    CurveSet bumped_r = base;
    bumped_r.funding = base.funding.shifted(0.001);
    CurveSet bumped_rc = bumped_r;
    bumped_rc.collateral = base.collateral.shifted(0.001);

    auto par = [&](const CurveSet& cs, double w) {
        return par_spread(c, m, cs, {HedgeStrategy::Blended, w, 0.05}).first;
    };

    // outright holding funds at r: a funding bump is a cost passed into K
    CHECK(par(bumped_r, 0.0) > par(base, 0.0));
    // a fully lent hedge is net short funding (-alpha * r), so the same bump
    // slightly cheapens the carry
    CHECK(par(bumped_r, 1.0) < par(base, 1.0));
    // bumping funding and collateral together raises the carry for every mix
    for (double w : {0.0, 0.5, 1.0})
        CHECK(par(bumped_rc, w) >= par(base, w));
}
