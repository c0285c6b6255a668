#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace vsc {

/// Bounded Lipschitz scalar signal used as a wheel acceleration perturbation.
///
/// Every generator declares its bound M (|f(t)| <= M) and Lipschitz
/// constant L (|f(t1)-f(t2)| <= L |t1-t2|).
class DisturbanceSignal {
  public:
    DisturbanceSignal() = default;

    static DisturbanceSignal zero();
    static DisturbanceSignal constant(double value);
    static DisturbanceSignal sinusoid(double amplitude, double frequency_hz, double phase = 0.0);
    /// Piecewise-linear random walk with per-knot slope clamped to the
    /// Lipschitz constant and values clamped to +/- bound. Deterministic in
    /// the seed; defined on [0, horizon] and constant beyond.
    static DisturbanceSignal random_walk(double bound, double lipschitz, std::uint64_t seed,
                                         double horizon, double knot_dt = 0.01);

    double operator()(double t) const;

    double bound() const { return bound_; }
    double lipschitz() const { return lipschitz_; }

  private:
    enum class Kind { kZero, kConstant, kSinusoid, kRandomWalk };

    Kind kind_ = Kind::kZero;
    double bound_ = 0.0;
    double lipschitz_ = 0.0;
    double amplitude_ = 0.0;
    double angular_rate_ = 0.0;
    double phase_ = 0.0;
    double knot_dt_ = 0.01;
    std::vector<double> knots_;
};

/// Independent right/left wheel perturbations.
struct WheelDisturbance {
    DisturbanceSignal right;
    DisturbanceSignal left;

    std::pair<double, double> sample(double t) const { return {right(t), left(t)}; }
    double bound() const;
    double lipschitz() const;
};

}  // namespace vsc
