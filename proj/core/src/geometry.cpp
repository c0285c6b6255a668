#include "vsc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vsc {

namespace {

constexpr double kDegenerateDistance = 1e-12;

struct SegmentHit {
    Vec2 point;
    double distance_sq = 0.0;
    bool at_endpoint = false;
};

SegmentHit closest_on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len_sq = ab.norm_sq();
    SegmentHit hit;
    if (len_sq <= 0.0) {
        hit.point = a;
        hit.at_endpoint = true;
    } else {
        const double t = std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0);
        hit.point = a + t * ab;
        hit.at_endpoint = t <= 0.0 || t >= 1.0;
    }
    hit.distance_sq = (p - hit.point).norm_sq();
    return hit;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& vs) {
    bool inside = false;
    for (std::size_t i = 0, j = vs.size() - 1; i < vs.size(); j = i++) {
        const bool crosses = (vs[i].y > p.y) != (vs[j].y > p.y);
        if (crosses) {
            const double x_cross =
                vs[j].x + (p.y - vs[j].y) / (vs[i].y - vs[j].y) * (vs[i].x - vs[j].x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    };
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

}  // namespace

void Feature::validate(double wheel_separation) const {
    if (!(safe_distance > 0.5 * wheel_separation)) {
        throw std::invalid_argument("feature '" + name + "': safe_distance must exceed d/2");
    }
    if (!(band_width > 0.0) || band_width > 0.2 * safe_distance * (1.0 + 1e-9)) {
        throw std::invalid_argument("feature '" + name +
                                    "': band_width must be in (0, 0.2*safe_distance]");
    }
    if (kind == Kind::kDisc && radius < 0.0) {
        throw std::invalid_argument("feature '" + name + "': negative radius");
    }
    if (kind == Kind::kPolyline) {
        if (vertices.size() < 3) {
            throw std::invalid_argument("feature '" + name + "': polyline needs >= 3 vertices");
        }
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = vertices[i];
            const Vec2& b = vertices[(i + 1) % n];
            for (std::size_t j = i + 1; j < n; ++j) {
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                const Vec2& c = vertices[j];
                const Vec2& d = vertices[(j + 1) % n];
                if (segments_intersect(a, b, c, d)) {
                    throw std::invalid_argument("feature '" + name + "': self-intersecting polyline");
                }
            }
        }
    }
}

DistanceReading closest_point(const Vec2& p, const Feature& feature,
                              const Vec2& moving_position) {
    DistanceReading reading;

    switch (feature.kind) {
        case Feature::Kind::kDisc: {
            const Vec2 offset = p - feature.center;
            const double center_dist = offset.norm();
            if (center_dist <= kDegenerateDistance) {
                reading.closest_point = feature.center;
                reading.degenerate = true;
                return reading;
            }
            const Vec2 outward = offset * (1.0 / center_dist);
            reading.closest_point =
                feature.radius > 0.0 ? feature.center + feature.radius * outward : feature.center;
            reading.distance = center_dist - feature.radius;
            reading.bearing = wrap_angle(std::atan2(outward.y, outward.x));
            if (feature.mode == FeatureMode::kKeepInside) {
                reading.distance = -reading.distance;
                reading.bearing = wrap_angle(reading.bearing + kPi);
            }
            return reading;
        }
        case Feature::Kind::kMovingPoint: {
            const Vec2 offset = p - moving_position;
            const double dist = offset.norm();
            reading.closest_point = moving_position;
            if (dist <= kDegenerateDistance) {
                reading.degenerate = true;
                return reading;
            }
            reading.distance = dist;
            reading.bearing = wrap_angle(std::atan2(offset.y, offset.x));
            return reading;
        }
        case Feature::Kind::kPolyline: {
            const std::vector<Vec2>& vs = feature.vertices;
            SegmentHit best;
            best.distance_sq = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < vs.size(); ++i) {
                const SegmentHit hit = closest_on_segment(p, vs[i], vs[(i + 1) % vs.size()]);
                // ties broken by smallest segment index (strict <)
                if (hit.distance_sq < best.distance_sq) best = hit;
            }
            reading.closest_point = best.point;
            reading.at_vertex = best.at_endpoint;
            const double dist = std::sqrt(best.distance_sq);
            const bool inside = point_in_polygon(p, vs);
            const bool positive_side = feature.mode == FeatureMode::kKeepInside ? inside : !inside;
            reading.distance = positive_side ? dist : -dist;
            if (dist <= kDegenerateDistance) {
                reading.degenerate = true;
                return reading;
            }
            // bearing follows the signed-distance gradient
            const Vec2 away = (p - best.point) * (1.0 / dist);
            const Vec2 grad = positive_side ? away : Vec2{-away.x, -away.y};
            reading.bearing = wrap_angle(std::atan2(grad.y, grad.x));
            return reading;
        }
    }
    return reading;
}

DistanceReading observe(const RobotState& state, const Feature& feature,
                        const Vec2& moving_position) {
    DistanceReading reading = closest_point(state.position(), feature, moving_position);
    if (!reading.degenerate) reading.alignment = angle_diff(state.theta, reading.bearing);
    return reading;
}

bool in_avoidance_zone(const DistanceReading& reading, const Feature& feature) {
    if (reading.degenerate) return true;
    return reading.distance <= feature.safe_distance + feature.band_width;
}

bool in_avoidance_zone(const Vec2& p, const Feature& feature, const Vec2& moving_position) {
    return in_avoidance_zone(closest_point(p, feature, moving_position), feature);
}

BodyError body_error(const RobotState& state, const ReferencePoint& ref) {
    const double ex = ref.x - state.x;
    const double ey = ref.y - state.y;
    const double c = std::cos(state.theta);
    const double s = std::sin(state.theta);
    return {c * ex + s * ey, -s * ex + c * ey};
}

MotionEstimate moving_rates(std::span<const Vec2> closest_points, double dt) {
    if (closest_points.size() < 3 || !(dt > 0.0)) {
        throw std::invalid_argument("moving_rates: need >= 3 samples and dt > 0");
    }
    const std::size_t mid = closest_points.size() / 2;
    const Vec2& prev = closest_points[mid - 1];
    const Vec2& next = closest_points[mid + 1];
    const Vec2& here = closest_points[mid];

    const double xd = (next.x - prev.x) / (2.0 * dt);
    const double yd = (next.y - prev.y) / (2.0 * dt);
    const double xdd = (next.x - 2.0 * here.x + prev.x) / (dt * dt);
    const double ydd = (next.y - 2.0 * here.y + prev.y) / (dt * dt);

    MotionEstimate est;
    const double speed_sq = xd * xd + yd * yd;
    est.speed = std::sqrt(speed_sq);
    if (speed_sq > 1e-12) {
        est.turn_rate = (ydd * xd - xdd * yd) / speed_sq;
        est.turn_rate_valid = true;
    }
    return est;
}

}  // namespace vsc
