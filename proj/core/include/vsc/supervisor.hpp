#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsc/geometry.hpp"

namespace vsc {

/// Supervisor modes. Serialized as "A0"/"A1"/"A2" in traces: tracking,
/// safety with the reference still inside the zone, safety waiting for the
/// lateral release test.
enum class Mode { kTracking, kAvoid, kHold };

const char* mode_label(Mode mode);

struct Transition {
    double time = 0.0;
    Mode from = Mode::kTracking;
    Mode to = Mode::kTracking;
    std::string trigger;
};

/// Switching logic between trajectory tracking and safety control, with
/// the body-frame lateral-error release rule and a minimum dwell time
/// against predicate flicker at band boundaries.
class Supervisor {
  public:
    struct Config {
        double dwell_time = 0.1;
        /// Keep-inside release variant that mirrors only the release
        /// inequality (the alternative reading of the geofencing rule).
        bool body_text_release = false;
    };

    struct Observation {
        bool robot_in_band = false;
        bool reference_in_zone = false;
        double lateral_error = 0.0;
        TurnDirection turn = TurnDirection::kCounterclockwise;
        FeatureMode feature_mode = FeatureMode::kAvoidOutside;
        std::size_t feature_index = kNoFeature;
    };

    Supervisor() = default;
    explicit Supervisor(const Config& config) : config_(config) {}

    /// Evaluates the transition predicates against `obs` at time `t`.
    /// Transitions inside the dwell window are deferred, not latched.
    Mode update(const Observation& obs, double t);

    Mode mode() const { return mode_; }
    std::size_t active_feature() const { return active_feature_; }
    bool safety_active() const { return mode_ != Mode::kTracking; }
    /// True when update() entered safety from tracking or switched the
    /// active feature (both require a safety-controller reset).
    bool activation_pending_reset() const { return reset_pending_; }

    const std::vector<Transition>& transitions() const { return transitions_; }

  private:
    bool release_test(double e_y, TurnDirection turn, FeatureMode fmode) const;
    void transition(Mode to, double t, const std::string& trigger);

    Config config_;
    Mode mode_ = Mode::kTracking;
    std::size_t active_feature_ = kNoFeature;
    double entry_time_ = 0.0;
    bool has_history_ = false;
    bool reset_pending_ = false;
    std::vector<Transition> transitions_;
};

}  // namespace vsc
