#pragma once

#include <vector>

#include "vsc/types.hpp"

namespace vsc {

/// Floor applied to forward speeds that end up as divisors (shadowed
/// reference speed, safety-law steering).
inline constexpr double kMinForwardSpeed = 0.05;

/// Reference pose/rate sample plus the transformed references and their
/// analytic derivatives.
struct ReferencePoint {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double v = 0.0;
    double omega = 0.0;
    double eta1 = 0.0;
    double xi1 = 0.0;
    double eta2 = 0.0;
    double xi2 = 0.0;
    double eta2_dot = 0.0;
    double xi2_dot = 0.0;
};

struct RateSample {
    double v = 0.0;
    double omega = 0.0;
    double v_dot = 0.0;
    double omega_dot = 0.0;
};

/// Declarative (v_r(t), omega_r(t)) profile: a sequence of constant or
/// sinusoidal segments with analytic rate derivatives. v_r must stay > 0.
struct RateSegment {
    enum class Kind { kConstant, kSinusoid };
    Kind kind = Kind::kConstant;
    double duration = 0.0;
    double v = 0.0;          // constant value / sinusoid offset
    double omega = 0.0;
    double v_amplitude = 0.0;
    double omega_amplitude = 0.0;
    double frequency_hz = 0.0;
    double phase = 0.0;
};

class RateProfile {
  public:
    RateProfile() = default;
    explicit RateProfile(std::vector<RateSegment> segments);

    static RateProfile constant(double v, double omega, double duration);

    /// Clamped to the last segment beyond the total duration.
    RateSample at(double t) const;
    double total_duration() const { return total_duration_; }
    const std::vector<RateSegment>& segments() const { return segments_; }

  private:
    std::vector<RateSegment> segments_;
    double total_duration_ = 0.0;
};

/// Integrates the reference kinematics (RK4, profile sampled at stage
/// times) and maintains the transformed references.
class ReferenceTrajectory {
  public:
    ReferenceTrajectory(double x0, double y0, double theta0, RateProfile profile,
                        double look_ahead);

    const ReferencePoint& current() const { return point_; }
    double time() const { return time_; }

    void advance(double dt);

  private:
    void refresh();

    RateProfile profile_;
    double look_ahead_ = 0.0;
    double time_ = 0.0;
    ReferencePoint point_;
};

/// v_hat_r = v_r cos(theta - theta_r), clamped below at `floor`.
double shadow_speed(double theta, double theta_ref, double v_ref,
                    double floor = kMinForwardSpeed);

}  // namespace vsc
