#include "trsfund/black.hpp"

#include "trsfund/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace trsfund {

double black_price(double forward, double strike, double total_variance, OptionType type) {
    if (!(forward > 0.0) || !(strike > 0.0))
        throw std::domain_error("black_price: forward and strike must be > 0");
    if (total_variance < 0.0)
        throw std::domain_error("black_price: negative variance");
    const double sign = type == OptionType::Call ? 1.0 : -1.0;
    if (total_variance == 0.0)
        return std::max(sign * (forward - strike), 0.0);
    const double s = std::sqrt(total_variance);
    const double d1 = std::log(forward / strike) / s + 0.5 * s;
    const double d2 = d1 - s;
    return sign * (forward * norm_cdf(sign * d1) - strike * norm_cdf(sign * d2));
}

double performance_option_price(const PerformanceOption& opt, const YieldCurve& growth,
                                const YieldCurve& discount, double vol,
                                ExpectationMode mode) {
    if (!(opt.pay_time > opt.fix_time) || opt.fix_time < 0.0)
        throw std::invalid_argument("performance_option_price: need 0 <= fix < pay");
    if (vol < 0.0)
        throw std::domain_error("performance_option_price: negative vol");
    const double ratio =
        zero_bond(growth, 0.0, opt.fix_time) / zero_bond(growth, 0.0, opt.pay_time);
    const double df = zero_bond(discount, 0.0, opt.pay_time);
    if (mode == ExpectationMode::ForwardIntrinsic)
        return df * black_price(ratio, 1.0, 0.0, opt.type);
    const double tv = vol * vol * (opt.pay_time - opt.fix_time);
    return df * black_price(ratio, 1.0, tv, opt.type);
}

double expected_inverse_spot(const ForwardCurve& fwd, double vol, double T,
                             ExpectationMode mode) {
    if (T < 0.0)
        throw std::domain_error("expected_inverse_spot: negative time");
    const double f = fwd.value(T);
    if (!(f > 0.0))
        throw std::domain_error("expected_inverse_spot: forward is not positive");
    if (mode == ExpectationMode::ForwardIntrinsic)
        return 1.0 / f;
    return std::exp(vol * vol * T) / f;
}

double expected_dividend_over_spot(const ForwardCurve& fwd, double vol, double fix_time,
                                   double amount, ExpectationMode mode) {
    return amount * expected_inverse_spot(fwd, vol, fix_time, mode);
}

double expected_terminal_ratio(const ForwardCurve& fwd, double vol, double fix_time,
                               double pay_time, ExpectationMode mode) {
    if (!(pay_time > fix_time) || fix_time < 0.0)
        throw std::invalid_argument("expected_terminal_ratio: need 0 <= fix < pay");
    const YieldCurve& z = fwd.growth_curve();
    const double pz_pay = zero_bond(z, 0.0, pay_time);
    double ratio = zero_bond(z, 0.0, fix_time) / pz_pay;
    for (const auto& d : fwd.dividends()) {
        if (d.time < fix_time)
            continue;
        if (!(d.time < pay_time))
            break;
        ratio -= zero_bond(z, 0.0, d.time) / pz_pay * (1.0 - fwd.dividend_tax()) * d.amount *
                 expected_inverse_spot(fwd, vol, fix_time, mode);
    }
    return ratio;
}

} // namespace trsfund
