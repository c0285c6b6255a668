#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vsc {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Wraps an angle to the half-open interval (-pi, pi].
inline double wrap_angle(double a) {
    return a - 2.0 * kPi * std::ceil((a - kPi) / (2.0 * kPi));
}

/// Wrapped difference a - b.
inline double angle_diff(double a, double b) { return wrap_angle(a - b); }

inline double saturate(double value, double limit) {
    if (value > limit) return limit;
    if (value < -limit) return -limit;
    return value;
}

/// sign with sign(0) = 0.
inline double signum(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

/// Differential-drive motor/actuator parameters.
///
/// motor_pole is the wheel dynamics pole a (1/s), motor_gain the voltage
/// gain b ((m/s^2)/V), wheel_separation the wheel center distance d (m) and
/// voltage_limit the per-wheel bound U (V) with 0 < U < a^2 d / b.
struct RobotParams {
    double motor_pole = 0.0;
    double motor_gain = 0.0;
    double wheel_separation = 0.0;
    double voltage_limit = 0.0;

    double max_linear_speed() const {
        return motor_gain * voltage_limit / motor_pole;
    }
    double max_angular_speed() const {
        return 2.0 * motor_gain * voltage_limit / (motor_pole * wheel_separation);
    }
    /// Bound on the body steering input u_omega.
    double max_steering_input() const {
        return 2.0 * voltage_limit / wheel_separation;
    }
    double admissible_voltage_limit() const {
        return motor_pole * motor_pole * wheel_separation / motor_gain;
    }

    void validate() const {
        if (!(motor_pole > 0.0)) throw std::invalid_argument("motor_pole must be > 0");
        if (!(motor_gain > 0.0)) throw std::invalid_argument("motor_gain must be > 0");
        if (!(wheel_separation > 0.0)) throw std::invalid_argument("wheel_separation must be > 0");
        if (!(voltage_limit > 0.0)) throw std::invalid_argument("voltage_limit must be > 0");
        if (!(voltage_limit < admissible_voltage_limit())) {
            throw std::invalid_argument("voltage_limit violates U < a^2 d / b");
        }
    }
};

/// Plant state [x, y, theta, v, omega]; theta kept in (-pi, pi].
struct RobotState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double v = 0.0;
    double omega = 0.0;

    Vec2 position() const { return {x, y}; }
};

struct WheelCommand {
    double right = 0.0;
    double left = 0.0;

    WheelCommand saturated(double limit) const {
        return {saturate(right, limit), saturate(left, limit)};
    }
};

}  // namespace vsc
