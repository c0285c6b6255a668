#pragma once

#include <array>
#include <utility>

#include "vsc/disturbance.hpp"
#include "vsc/types.hpp"

namespace vsc {

/// Body-frame inputs: thrust channel u_v (V) and steering channel u_omega (V/m).
struct BodyInputs {
    double thrust = 0.0;
    double steering = 0.0;
};

/// u_v = (u_R + u_L)/2, u_omega = (u_R - u_L)/d.
BodyInputs body_inputs(const WheelCommand& cmd, const RobotParams& params);

/// Inverse of body_inputs with the full saturation cascade: the body
/// channels are clamped to +/-U and +/-2U/d, mixed to wheel voltages, and the
/// result is clamped per wheel to +/-U.
WheelCommand wheel_commands(const BodyInputs& u, const RobotParams& params);

using StateDerivative = std::array<double, 5>;

/// Full nonlinear model: [v cos(theta), v sin(theta), omega,
/// -a v + b u_v + d_v, -a omega + b u_omega + d_omega] where the body
/// disturbances come from the sampled wheel pair.
StateDerivative derivative(const RobotState& state, const WheelCommand& cmd,
                           double delta_right, double delta_left, const RobotParams& params);

/// One classic RK4 step with the disturbance sampled at the stage times;
/// theta re-wrapped to (-pi, pi].
RobotState step(const RobotState& state, const WheelCommand& cmd, const WheelDisturbance& dist,
                const RobotParams& params, double t, double dt);

/// (bU/a, 2bU/(ad)) for the nominal model with saturated commands.
std::pair<double, double> velocity_bounds(const RobotParams& params);

}  // namespace vsc
