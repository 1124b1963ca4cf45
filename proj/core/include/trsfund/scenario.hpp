#pragma once

#include "trsfund/curve.hpp"
#include "trsfund/market.hpp"
#include "trsfund/montecarlo.hpp"
#include "trsfund/trs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trsfund {

// Parameter sweep request: a primary axis and an optional series parameter
// (one output block per series value).
struct SweepSpec {
    std::string axis;
    std::vector<double> grid;
    std::string series_axis;    // empty when there is no series
    std::vector<double> series; // empty when there is no series
};

// A fully specified pricing problem as read from a config file.
struct Scenario {
    CurveSet curves;
    MarketSnapshot market;
    HedgeSpec hedge;
    TRSContract contract;
    SimulationSpec sim;
    std::optional<SweepSpec> sweep;
    std::vector<std::string> warnings; // suspicious-but-legal inputs
};

// JSON config; see README for the schema. Errors carry the offending field
// path (or the parser's line/column for malformed files).
Scenario parse_scenario(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

// Canonical JSON serialization; parse(scenario_json(s)) reproduces s.
std::string scenario_json(const Scenario& scenario);

} // namespace trsfund
