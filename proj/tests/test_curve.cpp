#include "trsfund/curve.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace trsfund;

TEST_CASE("zero bond on a flat curve") {
    const auto flat = YieldCurve::flat(0.02);
    CHECK(zero_bond(flat, 0.0, 0.0) == 1.0);
    CHECK(zero_bond(flat, 0.7, 0.7) == 1.0);
    CHECK(zero_bond(flat, 0.0, 1.0) == doctest::Approx(0.9801986733067553).epsilon(1e-14));
    CHECK_THROWS_AS(zero_bond(flat, 1.0, 0.5), std::domain_error);
}

TEST_CASE("zero bond integrates piecewise rates exactly") {
    const YieldCurve curve({{0.0, 0.01}, {0.5, 0.03}});
    // 0.01 * 0.5 + 0.03 * 0.5 = 0.02
    CHECK(zero_bond(curve, 0.0, 1.0) == doctest::Approx(0.9801986733067553).epsilon(1e-14));
    // segment fully inside the first pillar
    CHECK(zero_bond(curve, 0.1, 0.3) == doctest::Approx(std::exp(-0.002)).epsilon(1e-14));
    // flat extrapolation beyond the last pillar
    CHECK(zero_bond(curve, 2.0, 3.0) == doctest::Approx(std::exp(-0.03)).epsilon(1e-14));
}

TEST_CASE("zero bond multiplicativity across pillars") {
    const YieldCurve curve({{0.0, -0.004}, {0.25, 0.01}, {0.6, 0.025}, {1.0, 0.002}});
    const double times[] = {0.0, 0.1, 0.25, 0.3, 0.6, 0.8, 1.0, 1.5, 2.0};
    for (double a : times)
        for (double b : times)
            for (double c : times) {
                if (!(a <= b && b <= c))
                    continue;
                const double lhs = zero_bond(curve, a, b) * zero_bond(curve, b, c);
                const double rhs = zero_bond(curve, a, c);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
            }
}

TEST_CASE("curve construction rejects bad pillars") {
    CHECK_THROWS_AS(YieldCurve({}), std::invalid_argument);
    CHECK_THROWS_AS(YieldCurve({{0.5, 0.01}, {0.5, 0.02}}), std::invalid_argument);
    CHECK_THROWS_AS(YieldCurve({{0.5, 0.01}, {0.2, 0.02}}), std::invalid_argument);
    CHECK_THROWS_AS(YieldCurve({{-0.1, 0.01}}), std::invalid_argument);
    CHECK_THROWS_AS(YieldCurve({{0.0, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("rate lookup uses left-closed segments and flat ends") {
    const YieldCurve curve({{0.1, 0.01}, {0.5, 0.03}});
    CHECK(curve.rate(0.0) == 0.01);  // before the first pillar
    CHECK(curve.rate(0.1) == 0.01);
    CHECK(curve.rate(0.49) == 0.01);
    CHECK(curve.rate(0.5) == 0.03);
    CHECK(curve.rate(9.0) == 0.03);
}

TEST_CASE("simple period rate") {
    CHECK(simple_period_rate(YieldCurve::flat(0.0), 0.0, 1.0 / 12) == 0.0);
    CHECK(simple_period_rate(YieldCurve::flat(0.02), 0.0, 1.0 / 12) ==
          doctest::Approx(0.020016675929785236).epsilon(1e-13));
    CHECK(simple_period_rate(YieldCurve::flat(0.02), 0.0, 1.0) ==
          doctest::Approx(0.02020134002675581).epsilon(1e-13));
    CHECK_THROWS_AS(simple_period_rate(YieldCurve::flat(0.02), 0.5, 0.5), std::domain_error);

    // monotone in a parallel shift
    const YieldCurve base({{0.0, -0.004}, {0.3, 0.012}});
    const double lo = simple_period_rate(base, 0.1, 0.6);
    const double hi = simple_period_rate(base.shifted(0.001), 0.1, 0.6);
    CHECK(hi > lo);
    CHECK(hi - lo == doctest::Approx(0.001).epsilon(1e-3));
}

TEST_CASE("combine merges pillar grids exactly") {
    const YieldCurve a({{0.0, 0.01}, {0.5, 0.02}});
    const YieldCurve b({{0.0, 0.004}, {0.3, 0.006}});
    const YieldCurve mix = combine({{2.0, &a}, {-1.0, &b}}, 0.001);
    CHECK(mix.rate(0.1) == doctest::Approx(2 * 0.01 - 0.004 + 0.001).epsilon(1e-15));
    CHECK(mix.rate(0.4) == doctest::Approx(2 * 0.01 - 0.006 + 0.001).epsilon(1e-15));
    CHECK(mix.rate(0.7) == doctest::Approx(2 * 0.02 - 0.006 + 0.001).epsilon(1e-15));
    CHECK(mix.pillars().size() == 3);
}

namespace {

CurveSet make_set(double r, double c, double l) {
    return {YieldCurve::flat(r), YieldCurve::flat(c), YieldCurve::flat(0.0),
            YieldCurve::flat(l), YieldCurve::flat(0.0)};
}

} // namespace

TEST_CASE("repo-blended growth curve") {
    CHECK(blended_repo_curve(make_set(0.03, 0.02, 0.0), 0.0).rate(0.5) ==
          doctest::Approx(0.02).epsilon(1e-15));
    CHECK(blended_repo_curve(make_set(0.02, 0.02, 0.0), 0.05).rate(0.5) ==
          doctest::Approx(0.02).epsilon(1e-15));
    CHECK(blended_repo_curve(make_set(0.03, 0.02, 0.005), 0.05).rate(0.5) ==
          doctest::Approx(0.0145).epsilon(1e-15));

    // alpha = 0, zero fee: identical to the collateral curve
    CurveSet set = make_set(0.03, 0.02, 0.0);
    set.collateral = YieldCurve({{0.0, 0.011}, {0.4, 0.019}});
    const YieldCurve z = blended_repo_curve(set, 0.0);
    for (double t : {0.0, 0.2, 0.4, 1.0})
        CHECK(z.rate(t) == set.collateral.rate(t));
}

TEST_CASE("swap discount curve") {
    CHECK(trs_discount_curve(make_set(0.03, 0.02, 0.0), 0.0).rate(0.1) ==
          doctest::Approx(0.02).epsilon(1e-15));
    CHECK(trs_discount_curve(make_set(0.02, 0.02, 0.0), 0.10).rate(0.1) ==
          doctest::Approx(0.02).epsilon(1e-15));
    CHECK(trs_discount_curve(make_set(0.03, 0.02, 0.0), 0.10).rate(0.1) ==
          doctest::Approx(0.019).epsilon(1e-15));
}
