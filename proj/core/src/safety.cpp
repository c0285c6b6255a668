#include "vsc/safety.hpp"

#include <cmath>
#include <stdexcept>

#include "vsc/dynamics.hpp"
#include "vsc/reference.hpp"

namespace vsc {

double zeta_input_bound(const RobotParams& params, double safe_distance) {
    if (!(safe_distance > 0.5 * params.wheel_separation)) {
        throw std::invalid_argument("zeta_input_bound: safe_distance must exceed d/2");
    }
    const double v_max = params.max_linear_speed();
    return v_max * v_max * (2.0 / params.wheel_separation - 1.0 / safe_distance);
}

double omega_reference(double v, double safe_distance, double u_zeta, double u_zeta_bound,
                       TurnDirection turn) {
    const double sat_u = saturate(u_zeta, u_zeta_bound);
    const double curvature = v / safe_distance;
    if (turn == TurnDirection::kCounterclockwise) return curvature - sat_u / v;
    return -curvature + sat_u / v;
}

double analytic_distance_rate(const RobotState& state, const DistanceReading& reading) {
    return state.v * std::cos(reading.alignment);
}

SafetyController::SafetyController(const SafetyGains& gains, const RobotParams& params,
                                   bool omega_ref_rate_feedforward)
    : gains_(gains), params_(params), rate_feedforward_(omega_ref_rate_feedforward) {
    StaGains sg;
    sg.sqrt_gain = gains.sqrt_gain;
    sg.integral_gain = gains.integral_gain;
    sg.surface_slope = gains.surface_slope;
    zeta_ = StaChannel(sg);
}

void SafetyController::activate() {
    zeta_.reset();
    has_prev_distance_ = false;
    filtered_rate_ = 0.0;
    has_prev_omega_ref_ = false;
    omega_ref_rate_ = 0.0;
}

WheelCommand SafetyController::command(const RobotState& state, const Inputs& in, double dt) {
    const double zeta1 = in.reading.distance - in.safe_distance;
    const double analytic = analytic_distance_rate(state, in.reading);

    if (in.feature_changed) {
        has_prev_distance_ = false;
        filtered_rate_ = 0.0;
    }
    if (in.feature_moving && has_prev_distance_) {
        const double raw = (in.reading.distance - prev_distance_) / dt;
        const double tau = 10.0 * dt;
        const double alpha = dt / (tau + dt);
        filtered_rate_ += alpha * (raw - filtered_rate_);
        zeta2_ = filtered_rate_;
    } else {
        zeta2_ = analytic;
        filtered_rate_ = analytic;
    }
    prev_distance_ = in.reading.distance;
    has_prev_distance_ = true;

    surface_ = sliding_surface(zeta1, zeta2_, gains_.surface_slope);

    const double u_bound = zeta_input_bound(params_, in.safe_distance);
    zeta_.set_output_limit(u_bound);
    const double w_eq = -gains_.surface_slope * zeta2_;
    const double u_zeta = zeta_.control(surface_, w_eq, dt);

    const double v_div = std::max(state.v, kMinForwardSpeed);
    const double omega_ref = omega_reference(v_div, in.safe_distance, u_zeta, u_bound, in.turn);

    const double half_pi = 0.5 * kPi;
    alignment_error_ = in.turn == TurnDirection::kCounterclockwise
                           ? angle_diff(in.reading.alignment, half_pi)
                           : angle_diff(in.reading.alignment, -half_pi);

    double feedforward = 0.0;
    if (rate_feedforward_) {
        if (has_prev_omega_ref_) {
            const double raw = (omega_ref - prev_omega_ref_) / dt;
            const double alpha = dt / (10.0 * dt + dt);
            omega_ref_rate_ += alpha * (raw - omega_ref_rate_);
            feedforward = omega_ref_rate_;
        }
        prev_omega_ref_ = omega_ref;
        has_prev_omega_ref_ = true;
    }

    const double a = params_.motor_pole;
    const double b = params_.motor_gain;
    BodyInputs body;
    body.steering =
        (-gains_.steering_gain * (state.omega - omega_ref) + a * state.omega + feedforward) / b;
    body.thrust = (-gains_.velocity_gain * (state.v - in.v_target) + a * state.v) / b;
    return wheel_commands(body, params_);
}

}  // namespace vsc
