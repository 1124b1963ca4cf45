#pragma once

#include "trsfund/scenario.hpp"

#include <string>
#include <vector>

namespace trsfund {

struct ValidationRow {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Reprices the scenario's analytics against the simulation oracle: par
// spreads plugged back into the cash-flow pricer, forwards against path
// means, the deflated-price martingale, antithetic variance reduction, and
// per-leg agreement. Every row is deterministic for a fixed seed.
std::vector<ValidationRow> run_validation(const Scenario& scenario);

bool all_passed(const std::vector<ValidationRow>& rows);
std::string validation_csv(const std::vector<ValidationRow>& rows);
std::string validation_report(const std::vector<ValidationRow>& rows);

} // namespace trsfund
