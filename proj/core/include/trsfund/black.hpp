#pragma once

#include "trsfund/curve.hpp"
#include "trsfund/forward.hpp"

namespace trsfund {

enum class OptionType { Call, Put };

/// How expectations of nonlinear spot functionals are evaluated:
///   Black           - lognormal spot with mean pinned to the forward,
///   ForwardIntrinsic - spot replaced by its forward (zero-volatility limit).
enum class ExpectationMode { Black, ForwardIntrinsic };

/// Undiscounted Black price with total variance v = vol^2 * expiry.
/// v == 0 returns the intrinsic value.
double black_price(double forward, double strike, double total_variance, OptionType type);

/// Option on the gross performance S_pay / S_fix struck at 1, paid at
/// pay_time. The underlying ratio forward is the pure growth-curve ratio
/// P(fix;z)/P(pay;z); dividends inside the window are ignored here.
struct PerformanceOption {
    double fix_time = 0.0;
    double pay_time = 0.0;
    OptionType type = OptionType::Call;
};

double performance_option_price(const PerformanceOption& opt, const YieldCurve& growth,
                                const YieldCurve& discount, double vol, ExpectationMode mode);

/// E[1/S_T] for a lognormal spot with mean F(T): exp(vol^2 T)/F(T), or 1/F(T)
/// in ForwardIntrinsic mode. Throws std::domain_error when F(T) <= 0.
double expected_inverse_spot(const ForwardCurve& fwd, double vol, double T,
                             ExpectationMode mode);

/// E[Q / S_fix] for a dividend of gross size amount fixed against the spot
/// observed at fix_time.
double expected_dividend_over_spot(const ForwardCurve& fwd, double vol, double fix_time,
                                   double amount, ExpectationMode mode);

/// E[F_fix(pay)/S_fix]: growth-bond ratio minus the after-tax dividends in
/// [fix, pay) weighted by E[1/S_fix].
double expected_terminal_ratio(const ForwardCurve& fwd, double vol, double fix_time,
                               double pay_time, ExpectationMode mode);

} // namespace trsfund
