#pragma once

#include "trsfund/curve.hpp"
#include "trsfund/market.hpp"
#include "trsfund/trs.hpp"

#include <cstdint>
#include <vector>

namespace trsfund {

struct SimulationSpec {
    std::uint64_t paths = 100000;
    std::uint64_t seed = 42;
    bool antithetic = true;
    unsigned threads = 1;
    // Optional extra grid times; dividend and contract dates are always
    // inserted so discrete drops are never stepped over.
    std::vector<double> grid;
};

// Union of 0, both schedules, and every dividend date inside the contract.
std::vector<double> simulation_grid(const TRSContract& contract, const MarketSnapshot& market);

struct PathSet {
    std::vector<double> grid;
    std::vector<double> values;       // path-major: values[p * grid.size() + s]
    std::vector<std::uint8_t> valid;  // 0 when a dividend drove the path <= 0

    std::size_t paths() const { return valid.size(); }
    double at(std::size_t path, std::size_t step) const {
        return values[path * grid.size() + step];
    }
};

// Exact lognormal transitions between grid points, after-tax dividend drop
// applied when leaving a dividend date; a fixing on the date itself sees the
// cum-dividend price. Same seed, same paths, regardless of thread count.
PathSet simulate_paths(const MarketSnapshot& market, const HedgeSpec& hedge,
                       const CurveSet& curves, const SimulationSpec& spec);

struct LegEstimate {
    double value = 0.0;
    double se = 0.0;
};

struct SimulationResult {
    double value = 0.0;
    double se = 0.0;
    LegEstimate performance; // equity performance coupons
    LegEstimate dividends;   // pass-through payments
    LegEstimate funding;     // Libor + K leg, signed against the receiver
    LegEstimate tobin;       // hedge transaction-tax drag (always a cost)
    std::uint64_t paths = 0; // paths contributing to the estimate
    std::uint64_t invalid = 0;
};

// Full cash-flow repricing of the contract at contract.spread along simulated
// paths. The four legs sum to the value estimate exactly.
SimulationResult mc_price_trs(const TRSContract& contract, const MarketSnapshot& market,
                              const CurveSet& curves, const HedgeSpec& hedge,
                              const SimulationSpec& spec);

} // namespace trsfund
