#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vsc/reference.hpp"
#include "vsc/types.hpp"

namespace vsc {

inline constexpr std::size_t kNoFeature = std::numeric_limits<std::size_t>::max();

enum class FeatureMode { kAvoidOutside, kKeepInside };
enum class TurnDirection { kCounterclockwise, kClockwise };

/// Environment feature: a disc obstacle (radius 0 = point), a closed
/// polyline border, or another robot tracked as a moving point.
struct Feature {
    enum class Kind { kDisc, kPolyline, kMovingPoint };

    Kind kind = Kind::kDisc;
    std::string name;
    Vec2 center;
    double radius = 0.0;
    std::vector<Vec2> vertices;          // closed polyline (last joins first)
    std::size_t robot_index = kNoFeature;  // moving point: index of the tracked robot
    FeatureMode mode = FeatureMode::kAvoidOutside;
    TurnDirection turn = TurnDirection::kCounterclockwise;
    double safe_distance = 0.0;  // standoff distance held by the safety law
    double band_width = 0.0;     // avoidance-band half-width around the standoff

    /// Checks safe_distance > d/2, band_width <= 0.2 * safe_distance, and
    /// polyline closure/simplicity. Throws std::invalid_argument.
    void validate(double wheel_separation) const;
};

/// Closest-point query result. distance is signed: for keep-inside
/// features it is positive inside the border, for avoid-outside discs it
/// goes negative inside the disc. bearing is the direction of the signed
/// distance gradient (quadrant-aware); alignment is wrap(theta - bearing),
/// filled by observe().
struct DistanceReading {
    Vec2 closest_point;
    double distance = 0.0;
    double bearing = 0.0;
    double alignment = 0.0;
    std::size_t feature_index = kNoFeature;
    bool degenerate = false;
    bool at_vertex = false;  // polyline corner contact
};

/// Closest point of `feature` to `p`. For moving-point features the
/// current position snapshot must be supplied.
DistanceReading closest_point(const Vec2& p, const Feature& feature,
                              const Vec2& moving_position = {});

/// closest_point plus the alignment angle delta = wrap(theta - beta).
DistanceReading observe(const RobotState& state, const Feature& feature,
                        const Vec2& moving_position = {});

/// Membership in the avoidance zone: signed distance <= safe + band.
bool in_avoidance_zone(const DistanceReading& reading, const Feature& feature);
bool in_avoidance_zone(const Vec2& p, const Feature& feature, const Vec2& moving_position = {});

/// Position error rotated into the body frame: [e_x e_y]^T = R_theta^T (p_r - p).
/// e_y > 0 means the reference lies to the robot's left.
struct BodyError {
    double along = 0.0;
    double lateral = 0.0;
};

BodyError body_error(const RobotState& state, const ReferencePoint& ref);

/// Central finite-difference speed/turn-rate of a closest-point stream.
/// Diagnostics only; turn_rate is flagged invalid when the point is
/// (nearly) stationary.
struct MotionEstimate {
    double speed = 0.0;
    double turn_rate = 0.0;
    bool turn_rate_valid = false;
};

MotionEstimate moving_rates(std::span<const Vec2> closest_points, double dt);

}  // namespace vsc
