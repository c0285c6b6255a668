#pragma once

#include "vsc/dynamics.hpp"
#include "vsc/types.hpp"

namespace vsc {

/// State of the feedback-linearized model: two double-integrator output
/// pairs (eta1, eta2) and (xi1, xi2) plus the heading zero dynamic.
struct TransformedState {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double theta = 0.0;
};

/// [eta1 xi1]^T = p + R_theta [L 0]^T, [eta2 xi2]^T = R_theta [v L omega]^T.
TransformedState forward_transform(const RobotState& state, double look_ahead);

/// Exact algebraic inverse of forward_transform (R_theta^-1 as transpose).
RobotState inverse_transform(const TransformedState& ts, double look_ahead);

/// Maps transformed-channel accelerations (u_eta, u_xi) back to body
/// voltages: u_v = (a v + L omega^2 + w1)/b, L u_omega = (a L omega - v omega + w2)/b
/// with [w1 w2]^T = R_theta^T [u_eta u_xi]^T.
BodyInputs input_inverse(double u_eta, double u_xi, const RobotState& state,
                         const RobotParams& params, double look_ahead);

/// Open interval of look-ahead offsets L admitting positive transformed
/// input bounds: (bU/(2a^2), a^2 d^2/(2bU)).
struct LookAheadInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double value) const { return value > lower && value < upper; }
};

LookAheadInterval admissible_look_ahead(const RobotParams& params);

/// U'(L) = min{2bU - 4Lb^2U^2/(a^2 d^2), 4LbU/d - 2b^2U^2/(a^2 d)}.
/// Throws std::domain_error for L outside the admissible interval.
double transformed_input_bound(const RobotParams& params, double look_ahead);

}  // namespace vsc
