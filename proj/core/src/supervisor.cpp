#include "vsc/supervisor.hpp"

namespace vsc {

const char* mode_label(Mode mode) {
    switch (mode) {
        case Mode::kTracking: return "A0";
        case Mode::kAvoid: return "A1";
        case Mode::kHold: return "A2";
    }
    return "?";
}

namespace {

struct ReleasePredicates {
    bool blocked = false;
    bool release = false;
};

ReleasePredicates evaluate_release(double e_y, TurnDirection turn, FeatureMode fmode,
                                   bool body_text_variant) {
    // Release fires when the straight path to the reference no longer
    // crosses the avoidance zone, i.e. the reference lies on the side away
    // from the feature. The away side is set by the turn convention alone:
    // counterclockwise keeps the feature on the robot's left (release
    // e_y <= 0), clockwise on the right (release e_y >= 0). A keep-inside
    // border circulated counterclockwise in the world frame is the
    // clockwise convention here.
    if (fmode == FeatureMode::kKeepInside && body_text_variant) {
        // literal alternative reading of the geofencing rule
        return {e_y > 0.0, e_y >= 0.0};
    }
    if (turn == TurnDirection::kCounterclockwise) return {e_y > 0.0, e_y <= 0.0};
    return {e_y < 0.0, e_y >= 0.0};
}

}  // namespace

bool Supervisor::release_test(double e_y, TurnDirection turn, FeatureMode fmode) const {
    return evaluate_release(e_y, turn, fmode, config_.body_text_release).release;
}

void Supervisor::transition(Mode to, double t, const std::string& trigger) {
    transitions_.push_back({t, mode_, to, trigger});
    mode_ = to;
    entry_time_ = t;
    has_history_ = true;
}

Mode Supervisor::update(const Observation& obs, double t) {
    reset_pending_ = false;
    if (has_history_ && t - entry_time_ < config_.dwell_time) return mode_;

    const ReleasePredicates rel =
        evaluate_release(obs.lateral_error, obs.turn, obs.feature_mode, config_.body_text_release);

    switch (mode_) {
        case Mode::kTracking:
            if (obs.robot_in_band && obs.reference_in_zone && obs.feature_index != kNoFeature) {
                active_feature_ = obs.feature_index;
                reset_pending_ = true;
                transition(Mode::kAvoid, t, "band entry with reference in zone");
            }
            break;
        case Mode::kAvoid:
            if (obs.feature_index != active_feature_ && obs.feature_index != kNoFeature &&
                obs.robot_in_band) {
                active_feature_ = obs.feature_index;
                reset_pending_ = true;
                transitions_.push_back({t, mode_, mode_, "dominant feature switch"});
            }
            if (!obs.reference_in_zone) {
                if (rel.release) {
                    transition(Mode::kTracking, t, "reference exited zone, release test passed");
                } else if (rel.blocked) {
                    transition(Mode::kHold, t, "reference exited zone, release test blocked");
                }
            }
            break;
        case Mode::kHold:
            if (obs.feature_index != active_feature_ && obs.feature_index != kNoFeature &&
                obs.robot_in_band) {
                active_feature_ = obs.feature_index;
                reset_pending_ = true;
                transitions_.push_back({t, mode_, mode_, "dominant feature switch"});
            }
            if (obs.reference_in_zone) {
                transition(Mode::kAvoid, t, "reference re-entered zone");
            } else if (rel.release) {
                transition(Mode::kTracking, t, "release test passed");
            }
            break;
    }
    if (mode_ == Mode::kTracking) active_feature_ = kNoFeature;
    return mode_;
}

}  // namespace vsc
