#include "trsfund/expansion.hpp"
#include "trsfund/forward.hpp"
#include "trsfund/montecarlo.hpp"
#include "trsfund/trs.hpp"

#include <benchmark/benchmark.h>

using namespace trsfund;

namespace {

struct Setup {
    CurveSet curves{YieldCurve({{0.0, 0.0030}, {0.25, 0.0032}, {0.5, 0.0035}, {0.75, 0.0038}}),
                    YieldCurve({{0.0, -0.0040}, {0.25, -0.0038}, {0.5, -0.0035}, {0.75, -0.0032}}),
                    YieldCurve({{0.0, -0.0040}, {0.25, -0.0038}, {0.5, -0.0035}, {0.75, -0.0032}}),
                    YieldCurve::flat(0.001),
                    YieldCurve({{0.0, -0.0032}, {0.25, -0.0030}, {0.5, -0.0027}, {0.75, -0.0024}})};
    MarketSnapshot market;
    HedgeSpec hedge{HedgeStrategy::Blended, 0.5, 0.05};
    TRSContract contract;

    Setup() {
        market.spot = 73.0;
        market.vol = 0.2;
        market.dividends = {{1.0 / 24, 3.2}};
        market.taxes = {0.15, 0.05, 0.0, 0.001};
        contract.direction = Direction::Payer;
        contract.notional_mode = NotionalMode::Resetting;
        contract.equity_dates = uniform_schedule(1.0, 12);
        contract.funding_dates = contract.equity_dates;
    }
};

const Setup& setup() {
    static const Setup s;
    return s;
}

void bm_zero_bond(benchmark::State& state) {
    const auto& s = setup();
    double t = 0.0;
    for (auto _ : state) {
        t = t > 2.0 ? 0.0 : t + 1e-3;
        benchmark::DoNotOptimize(zero_bond(s.curves.funding, 0.0, t));
    }
}
BENCHMARK(bm_zero_bond);

void bm_forward_curve(benchmark::State& state) {
    const auto& s = setup();
    const ForwardCurve fwd(s.market, s.hedge, s.curves);
    double t = 0.0;
    for (auto _ : state) {
        t = t > 1.0 ? 1e-3 : t + 1e-3;
        benchmark::DoNotOptimize(fwd.value(t));
    }
}
BENCHMARK(bm_forward_curve);

void bm_par_spread_resetting(benchmark::State& state) {
    const auto& s = setup();
    for (auto _ : state)
        benchmark::DoNotOptimize(par_spread(s.contract, s.market, s.curves, s.hedge).first);
}
BENCHMARK(bm_par_spread_resetting);

void bm_par_spread_constant(benchmark::State& state) {
    const auto& s = setup();
    TRSContract c = s.contract;
    c.notional_mode = NotionalMode::Constant;
    for (auto _ : state)
        benchmark::DoNotOptimize(par_spread(c, s.market, s.curves, s.hedge).first);
}
BENCHMARK(bm_par_spread_constant);

void bm_approx_par_spread(benchmark::State& state) {
    const auto& s = setup();
    const auto decomp = build_spread_decomposition(s.contract.equity_dates, s.curves);
    for (auto _ : state)
        benchmark::DoNotOptimize(approx_par_spread(s.hedge, s.contract, s.market, decomp));
}
BENCHMARK(bm_approx_par_spread);

void bm_mc_paths(benchmark::State& state) {
    const auto& s = setup();
    TRSContract c = s.contract;
    c.spread = par_spread(c, s.market, s.curves, s.hedge).first;
    SimulationSpec spec;
    spec.paths = static_cast<std::uint64_t>(state.range(0));
    spec.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_price_trs(c, s.market, s.curves, s.hedge, spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_mc_paths)->Args({16384, 1})->Args({65536, 1})->Args({65536, 4});

} // namespace

BENCHMARK_MAIN();
