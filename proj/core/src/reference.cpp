#include "vsc/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace vsc {

RateProfile::RateProfile(std::vector<RateSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("RateProfile: no segments");
    for (const RateSegment& seg : segments_) {
        if (!(seg.duration > 0.0)) throw std::invalid_argument("RateProfile: segment duration <= 0");
        const double v_min = seg.kind == RateSegment::Kind::kConstant
                                 ? seg.v
                                 : seg.v - std::abs(seg.v_amplitude);
        if (!(v_min > 0.0)) throw std::invalid_argument("RateProfile: v_r must stay > 0");
        total_duration_ += seg.duration;
    }
}

RateProfile RateProfile::constant(double v, double omega, double duration) {
    RateSegment seg;
    seg.kind = RateSegment::Kind::kConstant;
    seg.duration = duration;
    seg.v = v;
    seg.omega = omega;
    return RateProfile({seg});
}

RateSample RateProfile::at(double t) const {
    double local = t;
    const RateSegment* active = &segments_.back();
    for (const RateSegment& seg : segments_) {
        if (local <= seg.duration) {
            active = &seg;
            break;
        }
        local -= seg.duration;
    }
    if (local > active->duration) local = active->duration;

    if (active->kind == RateSegment::Kind::kConstant) {
        return {active->v, active->omega, 0.0, 0.0};
    }
    const double w = 2.0 * kPi * active->frequency_hz;
    const double arg = w * local + active->phase;
    RateSample sample;
    sample.v = active->v + active->v_amplitude * std::sin(arg);
    sample.omega = active->omega + active->omega_amplitude * std::sin(arg);
    sample.v_dot = active->v_amplitude * w * std::cos(arg);
    sample.omega_dot = active->omega_amplitude * w * std::cos(arg);
    return sample;
}

ReferenceTrajectory::ReferenceTrajectory(double x0, double y0, double theta0,
                                         RateProfile profile, double look_ahead)
    : profile_(std::move(profile)), look_ahead_(look_ahead) {
    if (!(look_ahead_ > 0.0)) throw std::invalid_argument("ReferenceTrajectory: look_ahead <= 0");
    point_.x = x0;
    point_.y = y0;
    point_.theta = wrap_angle(theta0);
    refresh();
}

void ReferenceTrajectory::advance(double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("ReferenceTrajectory: dt <= 0");

    struct Deriv {
        double x, y, theta;
    };
    const auto f = [this](double t, double x, double y, double theta) -> Deriv {
        (void)x;
        (void)y;
        const RateSample r = profile_.at(t);
        return {r.v * std::cos(theta), r.v * std::sin(theta), r.omega};
    };

    const double t = time_;
    const Deriv k1 = f(t, point_.x, point_.y, point_.theta);
    const Deriv k2 = f(t + 0.5 * dt, point_.x + 0.5 * dt * k1.x, point_.y + 0.5 * dt * k1.y,
                       point_.theta + 0.5 * dt * k1.theta);
    const Deriv k3 = f(t + 0.5 * dt, point_.x + 0.5 * dt * k2.x, point_.y + 0.5 * dt * k2.y,
                       point_.theta + 0.5 * dt * k2.theta);
    const Deriv k4 = f(t + dt, point_.x + dt * k3.x, point_.y + dt * k3.y,
                       point_.theta + dt * k3.theta);

    point_.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    point_.y += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    point_.theta = wrap_angle(point_.theta + dt / 6.0 * (k1.theta + 2.0 * k2.theta
                                                         + 2.0 * k3.theta + k4.theta));
    time_ += dt;
    refresh();
}

void ReferenceTrajectory::refresh() {
    const RateSample r = profile_.at(time_);
    point_.v = r.v;
    point_.omega = r.omega;

    const double c = std::cos(point_.theta);
    const double s = std::sin(point_.theta);
    const double L = look_ahead_;
    point_.eta1 = point_.x + L * c;
    point_.xi1 = point_.y + L * s;
    point_.eta2 = r.v * c - L * r.omega * s;
    point_.xi2 = r.v * s + L * r.omega * c;
    // d/dt of R_theta [v, L omega]^T with analytic rate derivatives
    point_.eta2_dot = r.v_dot * c - L * r.omega_dot * s - r.omega * point_.xi2;
    point_.xi2_dot = r.v_dot * s + L * r.omega_dot * c + r.omega * point_.eta2;
}

double shadow_speed(double theta, double theta_ref, double v_ref, double floor) {
    const double shadowed = v_ref * std::cos(angle_diff(theta, theta_ref));
    return std::max(shadowed, floor);
}

}  // namespace vsc
