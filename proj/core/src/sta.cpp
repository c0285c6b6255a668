#include "vsc/sta.hpp"

#include <cmath>
#include <sstream>

#include "vsc/types.hpp"

namespace vsc {

std::string GainCheck::report() const {
    std::ostringstream os;
    os << "k2 > L: " << (integral_gain_ok ? "ok" : "violated") << " (margin " << integral_margin
       << "), k1 > 2 sqrt(k2): " << (sqrt_gain_ok ? "ok" : "violated") << " (margin "
       << sqrt_margin << ")";
    return os.str();
}

GainCheck validate_gains(const StaGains& gains, double disturbance_lipschitz) {
    GainCheck check;
    check.integral_margin = gains.integral_gain - disturbance_lipschitz;
    check.integral_gain_ok = check.integral_margin > 0.0;
    check.sqrt_margin = gains.sqrt_gain - 2.0 * std::sqrt(std::max(gains.integral_gain, 0.0));
    check.sqrt_gain_ok = check.sqrt_margin > 0.0;
    return check;
}

double StaChannel::control(double sigma, double w_eq, double dt) {
    const double s = signum(sigma);
    double w = w_eq - gains_.sqrt_gain * std::sqrt(std::abs(sigma)) * s
               - gains_.integral_gain * integral_;
    if (gains_.output_limit) {
        const double limit = *gains_.output_limit;
        if (std::abs(w) > limit) {
            // conditional integration: freeze I while saturated
            return saturate(w, limit);
        }
        integral_ += s * dt;
        if (gains_.integral_gain > 0.0) {
            const double integral_cap = limit / gains_.integral_gain;
            integral_ = saturate(integral_, integral_cap);
        }
        return w;
    }
    integral_ += s * dt;
    return w;
}

}  // namespace vsc
