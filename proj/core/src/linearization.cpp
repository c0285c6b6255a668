#include "vsc/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vsc {

TransformedState forward_transform(const RobotState& state, double look_ahead) {
    const double c = std::cos(state.theta);
    const double s = std::sin(state.theta);
    TransformedState ts;
    ts.eta1 = state.x + look_ahead * c;
    ts.xi1 = state.y + look_ahead * s;
    ts.eta2 = state.v * c - look_ahead * state.omega * s;
    ts.xi2 = state.v * s + look_ahead * state.omega * c;
    ts.theta = state.theta;
    return ts;
}

RobotState inverse_transform(const TransformedState& ts, double look_ahead) {
    const double c = std::cos(ts.theta);
    const double s = std::sin(ts.theta);
    RobotState state;
    state.x = ts.eta1 - look_ahead * c;
    state.y = ts.xi1 - look_ahead * s;
    state.theta = ts.theta;
    // R_theta^T [eta2 xi2]^T
    state.v = c * ts.eta2 + s * ts.xi2;
    state.omega = (-s * ts.eta2 + c * ts.xi2) / look_ahead;
    return state;
}

BodyInputs input_inverse(double u_eta, double u_xi, const RobotState& state,
                         const RobotParams& params, double look_ahead) {
    const double c = std::cos(state.theta);
    const double s = std::sin(state.theta);
    const double w1 = c * u_eta + s * u_xi;
    const double w2 = -s * u_eta + c * u_xi;
    const double a = params.motor_pole;
    const double b = params.motor_gain;
    BodyInputs u;
    u.thrust = (a * state.v + look_ahead * state.omega * state.omega + w1) / b;
    u.steering = (a * look_ahead * state.omega - state.v * state.omega + w2) / (b * look_ahead);
    return u;
}

LookAheadInterval admissible_look_ahead(const RobotParams& params) {
    const double a = params.motor_pole;
    const double b = params.motor_gain;
    const double d = params.wheel_separation;
    const double U = params.voltage_limit;
    return {b * U / (2.0 * a * a), a * a * d * d / (2.0 * b * U)};
}

double transformed_input_bound(const RobotParams& params, double look_ahead) {
    const LookAheadInterval interval = admissible_look_ahead(params);
    if (!interval.contains(look_ahead)) {
        throw std::domain_error("transformed_input_bound: look-ahead outside admissible interval");
    }
    const double a = params.motor_pole;
    const double b = params.motor_gain;
    const double d = params.wheel_separation;
    const double U = params.voltage_limit;
    const double thrust_branch = 2.0 * b * U - 4.0 * look_ahead * b * b * U * U / (a * a * d * d);
    const double steering_branch = 4.0 * look_ahead * b * U / d - 2.0 * b * b * U * U / (a * a * d);
    return std::min(thrust_branch, steering_branch);
}

}  // namespace vsc
