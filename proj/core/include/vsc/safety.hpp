#pragma once

#include "vsc/geometry.hpp"
#include "vsc/sta.hpp"
#include "vsc/types.hpp"

namespace vsc {

/// Distance-loop and backstepping gains for the safety controller.
struct SafetyGains {
    double surface_slope = 1.0;   // c_zeta
    double sqrt_gain = 0.8;       // k_zeta1
    double integral_gain = 0.04;  // k_zeta2
    double velocity_gain = 5.0;   // c_v
    double steering_gain = 5.0;   // c_omega
};

/// Bound on the distance-loop acceleration input: (bU/a)^2 (2/d - 1/d_safe).
/// Requires d_safe > d/2.
double zeta_input_bound(const RobotParams& params, double safe_distance);

/// Auxiliary angular-velocity reference. Counterclockwise:
///   w_hat = v/d_safe - sat(u_zeta/U_zeta) U_zeta / v,
/// clockwise sign-mirrored. v is clamped at kMinForwardSpeed upstream.
double omega_reference(double v, double safe_distance, double u_zeta, double u_zeta_bound,
                       TurnDirection turn);

/// Distance-only safety controller: super-twisting on the distance error,
/// backstepping loops on v and omega, saturation cascade to wheels.
///
/// One instance per robot; stepped sequentially. activate() must be called
/// on every supervisor activation (resets the integral and the rate filter).
class SafetyController {
  public:
    SafetyController(const SafetyGains& gains, const RobotParams& params,
                     bool omega_ref_rate_feedforward = false);

    struct Inputs {
        DistanceReading reading;      // dominant feature, alignment filled
        double safe_distance = 0.0;   // the feature's standoff
        TurnDirection turn = TurnDirection::kCounterclockwise;
        bool feature_moving = false;  // moving feature: rate from filtered FD
        bool feature_changed = false;
        double v_target = 0.0;
    };

    WheelCommand command(const RobotState& state, const Inputs& in, double dt);

    void activate();

    double surface() const { return surface_; }
    double distance_rate() const { return zeta2_; }
    /// delta_tilde = delta -/+ pi/2 for the configured turn of the last call.
    double alignment_error() const { return alignment_error_; }

  private:
    SafetyGains gains_;
    RobotParams params_;
    bool rate_feedforward_;
    StaChannel zeta_;
    double surface_ = 0.0;
    double zeta2_ = 0.0;
    double alignment_error_ = 0.0;
    // moving-feature distance-rate filter (first-order, tau = 10 dt)
    bool has_prev_distance_ = false;
    double prev_distance_ = 0.0;
    double filtered_rate_ = 0.0;
    // omega_ref rate estimate for the optional feedforward
    bool has_prev_omega_ref_ = false;
    double prev_omega_ref_ = 0.0;
    double omega_ref_rate_ = 0.0;
};

/// Analytic distance rate v cos(delta); the closest-point motion of moving
/// features is left to the disturbance channel.
double analytic_distance_rate(const RobotState& state, const DistanceReading& reading);

}  // namespace vsc
