#include "trsfund/montecarlo.hpp"

#include "trsfund/forward.hpp"
#include "trsfund/rng.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace trsfund {

namespace {

constexpr std::uint64_t kBlockPaths = 8192; // even, so antithetic pairs never straddle blocks

std::vector<double> merged_times(std::vector<double> times) {
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

// Per-step coefficients of the exact lognormal transition
// S_{s+1} = (S_s - drop_s) * exp(drift_s + sigdt_s * Z).
struct StepModel {
    std::vector<double> drift;
    std::vector<double> sigdt;
    std::vector<double> drop;
    double spot = 0.0;
};

StepModel build_steps(const std::vector<double>& grid, const MarketSnapshot& market,
                      const HedgeSpec& hedge, const CurveSet& curves) {
    const YieldCurve growth = effective_hedge_curve(curves, hedge);
    const double rho = effective_dividend_tax(market.taxes, hedge);
    const std::size_t steps = grid.size() - 1;

    StepModel m;
    m.spot = market.spot;
    m.drift.resize(steps);
    m.sigdt.resize(steps);
    m.drop.assign(steps, 0.0);
    for (std::size_t s = 0; s < steps; ++s) {
        const double dt = grid[s + 1] - grid[s];
        m.drift[s] = growth.integral(grid[s], grid[s + 1]) - 0.5 * market.vol * market.vol * dt;
        m.sigdt[s] = market.vol * std::sqrt(dt);
    }
    for (const auto& d : market.dividends) {
        auto it = std::lower_bound(grid.begin(), grid.end(), d.time);
        if (it == grid.end())
            continue; // beyond the horizon
        if (*it != d.time) {
            if (d.time > grid.front())
                throw std::logic_error("dividend date missing from the simulation grid");
            continue;
        }
        const auto s = static_cast<std::size_t>(it - grid.begin());
        if (s < steps)
            m.drop[s] += (1.0 - rho) * d.amount;
    }
    return m;
}

class PathGen {
  public:
    PathGen(const StepModel& model, std::uint64_t seed, bool antithetic)
        : model_(model), stream_(seed), anti_(antithetic) {}

    // Fills out[0..steps]; false when a drop pushes the price to zero or below.
    bool generate(std::uint64_t path, std::vector<double>& out) const {
        const std::uint64_t idx = anti_ ? path >> 1 : path;
        const double sign = (anti_ && (path & 1u)) ? -1.0 : 1.0;
        double s = model_.spot;
        out[0] = s;
        bool ok = true;
        for (std::size_t k = 0; k < model_.drift.size(); ++k) {
            const double base = s - model_.drop[k];
            if (!(base > 0.0))
                ok = false;
            const double z = sign * stream_(idx, static_cast<std::uint32_t>(k));
            s = base * std::exp(model_.drift[k] + model_.sigdt[k] * z);
            out[k + 1] = s;
        }
        return ok;
    }

  private:
    const StepModel& model_;
    NormalStream stream_;
    bool anti_;
};

std::size_t grid_index(const std::vector<double>& grid, double t) {
    auto it = std::lower_bound(grid.begin(), grid.end(), t);
    if (it == grid.end() || *it != t)
        throw std::logic_error("contract date missing from the simulation grid");
    return static_cast<std::size_t>(it - grid.begin());
}

// Everything needed to turn one simulated path into discounted leg values.
struct PayoffModel {
    std::vector<std::size_t> eq_idx; // grid index of each equity date
    std::vector<double> eq_disc;     // P(T_i; y), index-aligned with eq_idx
    struct FundPeriod {
        double accrued; // x'_j (L_j + K)
        double disc;    // P(T'_j; y)
        std::size_t reset_idx;
    };
    std::vector<FundPeriod> fund;
    struct DivFlow {
        double net_disc; // (1 - rho_T) Q_k P(t_k; y)
        std::size_t fix_idx;
    };
    std::vector<DivFlow> divs;
    double spot = 0.0;
    double sign = 0.0;
    double tau = 0.0;
    bool constant = false;
    bool receiver = false;

    std::array<double, 4> legs(const std::vector<double>& s) const {
        const std::size_t n = eq_idx.size() - 1;
        double perf = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const double prev = s[eq_idx[i - 1]];
            const double cur = s[eq_idx[i]];
            perf += eq_disc[i] * (constant ? cur / prev - 1.0 : (cur - prev) / spot);
        }
        double div = 0.0;
        for (const auto& d : divs)
            div += d.net_disc / (constant ? s[d.fix_idx] : spot);
        double funding = 0.0;
        for (const auto& f : fund)
            funding += f.accrued * f.disc * (constant ? 1.0 : s[f.reset_idx] / spot);

        double cost = 0.0;
        if (tau != 0.0) {
            if (constant) {
                if (receiver) {
                    for (std::size_t i = 1; i < n; ++i)
                        cost += eq_disc[i] *
                                std::max(s[eq_idx[i]] / s[eq_idx[i - 1]] - 1.0, 0.0);
                    cost += eq_disc[n] * s[eq_idx[n]] / s[eq_idx[n - 1]];
                } else {
                    cost = 1.0;
                    for (std::size_t i = 1; i < n; ++i)
                        cost += eq_disc[i] *
                                std::max(1.0 - s[eq_idx[i]] / s[eq_idx[i - 1]], 0.0);
                }
            } else {
                cost = receiver ? eq_disc[n] * s[eq_idx[n]] / spot : 1.0;
            }
        }
        return {sign * perf, sign * div, -sign * funding, -tau * cost};
    }
};

struct Accumulator {
    double sum = 0.0;
    double sum2 = 0.0;
    std::array<double, 4> leg{};
    std::array<double, 4> leg2{};
    std::uint64_t units = 0;
    std::uint64_t invalid_paths = 0;

    void add(const Accumulator& o) {
        sum += o.sum;
        sum2 += o.sum2;
        for (std::size_t i = 0; i < 4; ++i) {
            leg[i] += o.leg[i];
            leg2[i] += o.leg2[i];
        }
        units += o.units;
        invalid_paths += o.invalid_paths;
    }
};

Accumulator reduce_tree(const std::vector<Accumulator>& accs, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1)
        return accs[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    Accumulator left = reduce_tree(accs, lo, mid);
    const Accumulator right = reduce_tree(accs, mid, hi);
    left.add(right);
    return left;
}

void run_block(const PathGen& gen, const PayoffModel& payoff, std::uint64_t first,
               std::uint64_t last, bool antithetic, std::size_t grid_size, Accumulator& acc) {
    std::vector<double> s0(grid_size);
    std::vector<double> s1(grid_size);
    const std::uint64_t stride = antithetic ? 2 : 1;
    for (std::uint64_t p = first; p < last; p += stride) {
        bool ok = gen.generate(p, s0);
        std::array<double, 4> l = {0.0, 0.0, 0.0, 0.0};
        if (ok)
            l = payoff.legs(s0);
        if (antithetic) {
            const bool ok1 = gen.generate(p + 1, s1);
            if (ok && ok1) {
                const auto l1 = payoff.legs(s1);
                for (std::size_t i = 0; i < 4; ++i)
                    l[i] = 0.5 * (l[i] + l1[i]);
            }
            ok = ok && ok1;
        }
        if (!ok) {
            acc.invalid_paths += stride;
            continue;
        }
        const double v = ((l[0] + l[1]) + l[2]) + l[3];
        acc.sum += v;
        acc.sum2 += v * v;
        for (std::size_t i = 0; i < 4; ++i) {
            acc.leg[i] += l[i];
            acc.leg2[i] += l[i] * l[i];
        }
        acc.units += 1;
    }
}

void check_spec(const SimulationSpec& spec) {
    if (spec.paths < 2)
        throw std::invalid_argument("need at least two paths");
    if (spec.antithetic && (spec.paths & 1u))
        throw std::invalid_argument("antithetic sampling needs an even path count");
    for (double t : spec.grid)
        if (!(t >= 0.0) || !std::isfinite(t))
            throw std::invalid_argument("grid times must be finite and >= 0");
}

void check_invalid_fraction(std::uint64_t invalid, std::uint64_t total) {
    if (invalid * 10000 > total)
        throw std::runtime_error("more than 0.01% of paths hit a negative price");
}

LegEstimate estimate(double sum, double sum2, std::uint64_t units, double scale) {
    const double mean = sum / static_cast<double>(units);
    double var = (sum2 - sum * mean) / static_cast<double>(units - 1);
    var = std::max(var, 0.0);
    return {scale * mean, scale * std::sqrt(var / static_cast<double>(units))};
}

} // namespace

std::vector<double> simulation_grid(const TRSContract& contract, const MarketSnapshot& market) {
    std::vector<double> times = contract.equity_dates;
    times.insert(times.end(), contract.funding_dates.begin(), contract.funding_dates.end());
    const double maturity = contract.equity_dates.back();
    for (const auto& d : market.dividends)
        if (d.time < maturity)
            times.push_back(d.time);
    times.push_back(0.0);
    return merged_times(std::move(times));
}

PathSet simulate_paths(const MarketSnapshot& market, const HedgeSpec& hedge,
                       const CurveSet& curves, const SimulationSpec& spec) {
    validate_market(market);
    validate_hedge(hedge);
    check_spec(spec);
    if (spec.grid.empty())
        throw std::invalid_argument("simulate_paths needs at least one grid time");

    std::vector<double> times = spec.grid;
    times.push_back(0.0);
    const double horizon = *std::max_element(times.begin(), times.end());
    for (const auto& d : market.dividends)
        if (d.time < horizon)
            times.push_back(d.time);
    PathSet set;
    set.grid = merged_times(std::move(times));

    const StepModel model = build_steps(set.grid, market, hedge, curves);
    const PathGen gen(model, spec.seed, spec.antithetic);

    set.values.resize(spec.paths * set.grid.size());
    set.valid.resize(spec.paths);
    std::vector<double> buf(set.grid.size());
    std::uint64_t invalid = 0;
    for (std::uint64_t p = 0; p < spec.paths; ++p) {
        const bool ok = gen.generate(p, buf);
        std::copy(buf.begin(), buf.end(), set.values.begin() + p * set.grid.size());
        set.valid[p] = ok ? 1 : 0;
        invalid += ok ? 0 : 1;
    }
    check_invalid_fraction(invalid, spec.paths);
    return set;
}

SimulationResult mc_price_trs(const TRSContract& contract, const MarketSnapshot& market,
                              const CurveSet& curves, const HedgeSpec& hedge,
                              const SimulationSpec& spec) {
    validate_contract(contract);
    validate_market(market);
    validate_hedge(hedge);
    check_pairing(contract.direction, hedge.strategy);
    check_spec(spec);

    std::vector<double> times = simulation_grid(contract, market);
    const double maturity = contract.equity_dates.back();
    for (double t : spec.grid)
        if (t <= maturity)
            times.push_back(t);
    const std::vector<double> grid = merged_times(std::move(times));

    const StepModel model = build_steps(grid, market, hedge, curves);
    const PathGen gen(model, spec.seed, spec.antithetic);
    const YieldCurve discount = trs_discount_curve(curves, contract.beta);

    PayoffModel payoff;
    payoff.spot = market.spot;
    payoff.sign = contract.direction == Direction::Receiver ? 1.0 : -1.0;
    payoff.tau = contract.tobin_enabled ? market.taxes.tobin : 0.0;
    payoff.constant = contract.notional_mode == NotionalMode::Constant;
    payoff.receiver = contract.direction == Direction::Receiver;
    const auto& eq = contract.equity_dates;
    payoff.eq_idx.reserve(eq.size());
    payoff.eq_disc.reserve(eq.size());
    for (double t : eq) {
        payoff.eq_idx.push_back(grid_index(grid, t));
        payoff.eq_disc.push_back(zero_bond(discount, 0.0, t));
    }
    const auto& fd = contract.funding_dates;
    for (std::size_t j = 1; j < fd.size(); ++j) {
        const double x = fd[j] - fd[j - 1];
        const double libor = simple_period_rate(curves.libor, fd[j - 1], fd[j]);
        payoff.fund.push_back({x * (libor + contract.spread),
                               zero_bond(discount, 0.0, fd[j]),
                               grid_index(grid, eta(fd[j], eq))});
    }
    const double rho_t = market.taxes.div_swap;
    for (const auto& d : market.dividends) {
        auto it = std::upper_bound(eq.begin(), eq.end(), d.time);
        if (it == eq.begin() || it == eq.end())
            continue; // outside the contract's life
        const double fix = *(it - 1);
        payoff.divs.push_back({(1.0 - rho_t) * d.amount * zero_bond(discount, 0.0, d.time),
                               grid_index(grid, fix)});
    }

    const std::uint64_t blocks = (spec.paths + kBlockPaths - 1) / kBlockPaths;
    std::vector<Accumulator> accs(blocks);
    auto work = [&](std::uint64_t b) {
        const std::uint64_t first = b * kBlockPaths;
        const std::uint64_t last = std::min(first + kBlockPaths, spec.paths);
        run_block(gen, payoff, first, last, spec.antithetic, grid.size(), accs[b]);
    };

    const unsigned threads =
        std::max(1u, std::min(spec.threads, static_cast<unsigned>(blocks)));
    if (threads == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            work(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1))
                    work(b);
            });
        for (auto& th : pool)
            th.join();
    }

    const Accumulator total = reduce_tree(accs, 0, accs.size());
    check_invalid_fraction(total.invalid_paths, spec.paths);
    if (total.units < 2)
        throw std::runtime_error("not enough valid paths to estimate a standard error");

    SimulationResult res;
    const double scale = contract.notional;
    res.performance = estimate(total.leg[0], total.leg2[0], total.units, scale);
    res.dividends = estimate(total.leg[1], total.leg2[1], total.units, scale);
    res.funding = estimate(total.leg[2], total.leg2[2], total.units, scale);
    res.tobin = estimate(total.leg[3], total.leg2[3], total.units, scale);
    res.value = ((res.performance.value + res.dividends.value) + res.funding.value) +
                res.tobin.value;
    res.se = estimate(total.sum, total.sum2, total.units, scale).se;
    res.paths = total.units * (spec.antithetic ? 2 : 1);
    res.invalid = total.invalid_paths;
    return res;
}

} // namespace trsfund
