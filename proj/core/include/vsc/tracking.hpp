#pragma once

#include "vsc/linearization.hpp"
#include "vsc/reference.hpp"
#include "vsc/sta.hpp"
#include "vsc/types.hpp"

namespace vsc {

/// Per-channel tracking gains, shared by the eta and xi channels.
struct TrackingGains {
    double surface_slope = 10.0;
    double sqrt_gain = 2.0;
    double integral_gain = 0.5;
};

/// Trajectory-tracking controller: transformed errors, one super-twisting
/// channel per output, then the saturation cascade down to wheel voltages.
/// The look-ahead offset is fixed at d/2, which maximizes the transformed
/// input bound.
class TrackingController {
  public:
    TrackingController(const TrackingGains& gains, const RobotParams& params);

    WheelCommand command(const RobotState& state, const ReferencePoint& ref, double dt);

    void reset();
    double surface_eta() const { return surface_eta_; }
    double surface_xi() const { return surface_xi_; }
    double input_bound() const { return input_bound_; }
    double look_ahead() const { return look_ahead_; }

  private:
    TrackingGains gains_;
    RobotParams params_;
    double look_ahead_;
    double input_bound_;
    StaChannel eta_;
    StaChannel xi_;
    double surface_eta_ = 0.0;
    double surface_xi_ = 0.0;
};

}  // namespace vsc
