#pragma once

#include "trsfund/curve.hpp"
#include "trsfund/market.hpp"
#include "trsfund/trs.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace trsfund {

// One-period simple rates over the OIS benchmark, one entry per schedule
// period. These are the building blocks of the first-order spread formulas.
struct SpreadDecomposition {
    std::vector<double> times;        // period boundaries, times[0] = 0
    std::vector<double> ois_rate;     // E, the benchmark one-period rate
    std::vector<double> d_funding;    // funding spread over OIS
    std::vector<double> d_collateral; // collateral spread
    std::vector<double> d_repo;       // repo-fee spread (fee curve on top of OIS)
    std::vector<double> d_libor;      // Libor projection spread
    // Source curves, kept so the first-order dividend/Tobin blocks can be
    // evaluated; absent when the decomposition was assembled by hand.
    std::optional<CurveSet> source;

    std::size_t periods() const { return ois_rate.size(); }
    // Period containing t, i.e. smallest i with t < times[i+1]. Throws when t
    // is outside [times.front(), times.back()).
    std::size_t period_index(double t) const;
};

SpreadDecomposition build_spread_decomposition(const std::vector<double>& dates,
                                               const CurveSet& curves);

// Dividend tax impact rate: the first-order cost, per unit of dividend yield,
// of a dividend paid at t_k whose drop is carried to the period end T_i.
double gamma(const HedgeSpec& hedge, double t_k, double T_i,
             const SpreadDecomposition& decomp, double beta, const TaxSpec& taxes);

// First-order par spread on aligned schedules, discounted at OIS throughout.
// Misaligned contracts and hand-built decompositions (no source curves) are
// rejected.
double approx_par_spread(const HedgeSpec& hedge, const TRSContract& contract,
                         const MarketSnapshot& market, const SpreadDecomposition& decomp);

} // namespace trsfund
