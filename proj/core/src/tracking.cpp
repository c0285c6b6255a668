#include "vsc/tracking.hpp"

#include "vsc/dynamics.hpp"

namespace vsc {

namespace {

StaGains channel_gains(const TrackingGains& g, double bound) {
    StaGains sg;
    sg.sqrt_gain = g.sqrt_gain;
    sg.integral_gain = g.integral_gain;
    sg.surface_slope = g.surface_slope;
    sg.output_limit = bound;
    return sg;
}

}  // namespace

TrackingController::TrackingController(const TrackingGains& gains, const RobotParams& params)
    : gains_(gains),
      params_(params),
      look_ahead_(0.5 * params.wheel_separation),
      input_bound_(transformed_input_bound(params, look_ahead_)),
      eta_(channel_gains(gains, input_bound_)),
      xi_(channel_gains(gains, input_bound_)) {}

void TrackingController::reset() {
    eta_.reset();
    xi_.reset();
}

WheelCommand TrackingController::command(const RobotState& state, const ReferencePoint& ref,
                                         double dt) {
    const TransformedState ts = forward_transform(state, look_ahead_);

    const double e_eta1 = ts.eta1 - ref.eta1;
    const double e_eta2 = ts.eta2 - ref.eta2;
    const double e_xi1 = ts.xi1 - ref.xi1;
    const double e_xi2 = ts.xi2 - ref.xi2;

    surface_eta_ = sliding_surface(e_eta1, e_eta2, gains_.surface_slope);
    surface_xi_ = sliding_surface(e_xi1, e_xi2, gains_.surface_slope);

    const double weq_eta = ref.eta2_dot - gains_.surface_slope * e_eta2;
    const double weq_xi = ref.xi2_dot - gains_.surface_slope * e_xi2;

    const double u_eta = saturate(eta_.control(surface_eta_, weq_eta, dt), input_bound_);
    const double u_xi = saturate(xi_.control(surface_xi_, weq_xi, dt), input_bound_);

    const BodyInputs body = input_inverse(u_eta, u_xi, state, params_, look_ahead_);
    return wheel_commands(body, params_);
}

}  // namespace vsc
