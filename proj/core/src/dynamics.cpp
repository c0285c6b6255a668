#include "vsc/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace vsc {

BodyInputs body_inputs(const WheelCommand& cmd, const RobotParams& params) {
    return {0.5 * (cmd.right + cmd.left), (cmd.right - cmd.left) / params.wheel_separation};
}

WheelCommand wheel_commands(const BodyInputs& u, const RobotParams& params) {
    const double uv = saturate(u.thrust, params.voltage_limit);
    const double uw = saturate(u.steering, params.max_steering_input());
    const double half_d = 0.5 * params.wheel_separation;
    WheelCommand cmd{uv + half_d * uw, uv - half_d * uw};
    return cmd.saturated(params.voltage_limit);
}

StateDerivative derivative(const RobotState& state, const WheelCommand& cmd,
                           double delta_right, double delta_left, const RobotParams& params) {
    const BodyInputs u = body_inputs(cmd, params);
    const double delta_v = 0.5 * (delta_right + delta_left);
    const double delta_omega = (delta_right - delta_left) / params.wheel_separation;
    return {
        state.v * std::cos(state.theta),
        state.v * std::sin(state.theta),
        state.omega,
        -params.motor_pole * state.v + params.motor_gain * u.thrust + delta_v,
        -params.motor_pole * state.omega + params.motor_gain * u.steering + delta_omega,
    };
}

namespace {

RobotState apply(const RobotState& s, const StateDerivative& k, double h) {
    return {s.x + h * k[0], s.y + h * k[1], s.theta + h * k[2], s.v + h * k[3], s.omega + h * k[4]};
}

}  // namespace

RobotState step(const RobotState& state, const WheelCommand& cmd, const WheelDisturbance& dist,
                const RobotParams& params, double t, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");

    const auto [r0, l0] = dist.sample(t);
    const auto [rh, lh] = dist.sample(t + 0.5 * dt);
    const auto [r1, l1] = dist.sample(t + dt);

    const StateDerivative k1 = derivative(state, cmd, r0, l0, params);
    const StateDerivative k2 = derivative(apply(state, k1, 0.5 * dt), cmd, rh, lh, params);
    const StateDerivative k3 = derivative(apply(state, k2, 0.5 * dt), cmd, rh, lh, params);
    const StateDerivative k4 = derivative(apply(state, k3, dt), cmd, r1, l1, params);

    RobotState out = state;
    out.x += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    out.y += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    out.theta = wrap_angle(out.theta + dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]));
    out.v += dt / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]);
    out.omega += dt / 6.0 * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4]);
    return out;
}

std::pair<double, double> velocity_bounds(const RobotParams& params) {
    return {params.max_linear_speed(), params.max_angular_speed()};
}

}  // namespace vsc
