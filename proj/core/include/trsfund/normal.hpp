#pragma once

namespace trsfund {

/// Standard normal CDF. Hart-style rational approximation, absolute error
/// below 1e-15 over the full double range.
double norm_cdf(double x);

/// Inverse standard normal CDF (Wichura's PPND16 rational approximation).
/// Requires p in (0, 1); absolute error below 1e-13.
double norm_inv_cdf(double p);

} // namespace trsfund
