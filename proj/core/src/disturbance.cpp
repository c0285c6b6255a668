#include "vsc/disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "vsc/types.hpp"

namespace vsc {

DisturbanceSignal DisturbanceSignal::zero() { return {}; }

DisturbanceSignal DisturbanceSignal::constant(double value) {
    DisturbanceSignal s;
    s.kind_ = Kind::kConstant;
    s.amplitude_ = value;
    s.bound_ = std::abs(value);
    s.lipschitz_ = 0.0;
    return s;
}

DisturbanceSignal DisturbanceSignal::sinusoid(double amplitude, double frequency_hz, double phase) {
    DisturbanceSignal s;
    s.kind_ = Kind::kSinusoid;
    s.amplitude_ = amplitude;
    s.angular_rate_ = 2.0 * kPi * frequency_hz;
    s.phase_ = phase;
    s.bound_ = std::abs(amplitude);
    s.lipschitz_ = std::abs(amplitude * s.angular_rate_);
    return s;
}

DisturbanceSignal DisturbanceSignal::random_walk(double bound, double lipschitz,
                                                 std::uint64_t seed, double horizon,
                                                 double knot_dt) {
    if (!(bound >= 0.0) || !(lipschitz >= 0.0) || !(knot_dt > 0.0) || !(horizon >= 0.0)) {
        throw std::invalid_argument("random_walk: bound, lipschitz, horizon, knot_dt must be >= 0");
    }
    DisturbanceSignal s;
    s.kind_ = Kind::kRandomWalk;
    s.bound_ = bound;
    s.lipschitz_ = lipschitz;
    s.knot_dt_ = knot_dt;

    const std::size_t n = static_cast<std::size_t>(std::ceil(horizon / knot_dt)) + 2;
    s.knots_.reserve(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> slope(-lipschitz, lipschitz);
    double value = 0.0;
    s.knots_.push_back(value);
    for (std::size_t i = 1; i < n; ++i) {
        value += slope(rng) * knot_dt;
        value = std::clamp(value, -bound, bound);
        s.knots_.push_back(value);
    }
    return s;
}

double DisturbanceSignal::operator()(double t) const {
    switch (kind_) {
        case Kind::kZero:
            return 0.0;
        case Kind::kConstant:
            return amplitude_;
        case Kind::kSinusoid:
            return amplitude_ * std::sin(angular_rate_ * t + phase_);
        case Kind::kRandomWalk: {
            if (knots_.empty()) return 0.0;
            if (t <= 0.0) return knots_.front();
            const double pos = t / knot_dt_;
            const std::size_t i = static_cast<std::size_t>(pos);
            if (i + 1 >= knots_.size()) return knots_.back();
            const double frac = pos - static_cast<double>(i);
            return knots_[i] + (knots_[i + 1] - knots_[i]) * frac;
        }
    }
    return 0.0;
}

double WheelDisturbance::bound() const { return std::max(right.bound(), left.bound()); }

double WheelDisturbance::lipschitz() const {
    return std::max(right.lipschitz(), left.lipschitz());
}

}  // namespace vsc
