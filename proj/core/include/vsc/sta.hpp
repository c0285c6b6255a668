#pragma once

#include <optional>
#include <string>

namespace vsc {

/// Super-twisting gains. sqrt_gain is k1, integral_gain is k2 and
/// surface_slope the sliding-surface slope. output_limit, when set, bounds
/// the channel output and enables conditional-integration anti-windup.
struct StaGains {
    double sqrt_gain = 0.0;
    double integral_gain = 0.0;
    double surface_slope = 0.0;
    std::optional<double> output_limit;
};

/// sigma = e2 + slope * e1.
inline double sliding_surface(double e1, double e2, double slope) { return e2 + slope * e1; }

/// Result of checking k2 > L and k1 > 2 sqrt(k2) against a declared
/// disturbance Lipschitz constant. Margins are (lhs - rhs) of each
/// inequality, negative on violation.
struct GainCheck {
    bool integral_gain_ok = false;
    bool sqrt_gain_ok = false;
    double integral_margin = 0.0;
    double sqrt_margin = 0.0;

    bool ok() const { return integral_gain_ok && sqrt_gain_ok; }
    std::string report() const;
};

GainCheck validate_gains(const StaGains& gains, double disturbance_lipschitz);

/// One super-twisting channel:
///   w = w_eq - k1 sqrt(|sigma|) sign(sigma) - k2 * I,  I' = sign(sigma).
///
/// The integral advances by forward Euler after the output is formed; when
/// an output limit is set and the output saturates, the integral update is
/// frozen for that step and the integral contribution is kept within the
/// limit. Instances carry mutable state and must be stepped sequentially.
class StaChannel {
  public:
    StaChannel() = default;
    explicit StaChannel(const StaGains& gains) : gains_(gains) {}

    double control(double sigma, double w_eq, double dt);

    void reset() { integral_ = 0.0; }
    /// Raw accumulated integral of sign(sigma) (seconds).
    double integral() const { return integral_; }
    void set_integral(double value) { integral_ = value; }

    const StaGains& gains() const { return gains_; }
    void set_output_limit(std::optional<double> limit) { gains_.output_limit = limit; }

  private:
    StaGains gains_;
    double integral_ = 0.0;
};

}  // namespace vsc
