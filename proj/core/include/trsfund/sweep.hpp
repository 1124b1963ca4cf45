#pragma once

#include "trsfund/scenario.hpp"
#include "trsfund/trs.hpp"

#include <string>
#include <vector>

namespace trsfund {

struct SweepRow {
    double axis_value = 0.0;
    double series_value = 0.0; // meaningful only when the sweep has a series
    double spread = 0.0;
    SpreadBreakdown breakdown;
};

// Applies one axis value to a copy of the scenario: taxes and weights are set
// directly, bump axes shift the base curves, spot and dividend bumps are
// relative. Throws on unknown axis names.
Scenario apply_axis(const Scenario& base, const std::string& axis, double value);

// Par spread over the grid; series-major row order (all grid points of the
// first series value, then the next).
std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& sweep);

std::string sweep_csv(const SweepSpec& sweep, const std::vector<SweepRow>& rows);

struct SensitivityRow {
    std::string name;   // bumped quantity
    double bump = 0.0;  // applied bump (fraction or absolute rate)
    double spread = 0.0;
    double delta_bp = 0.0; // spread change against the base, in basis points
};

// Bump-and-revalue: spot and dividends +/-10% relative, funding and
// collateral +/-10bps parallel.
std::vector<SensitivityRow> run_sensitivities(const Scenario& scenario);

std::string sensitivities_csv(const std::vector<SensitivityRow>& rows);

} // namespace trsfund
