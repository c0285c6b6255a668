#include <doctest.h>

#include <cmath>
#include <vector>

#include "vsc/dynamics.hpp"
#include "vsc/linearization.hpp"
#include "vsc/tracking.hpp"

using namespace vsc;

namespace {

RobotParams scenario_params() { return {25.0, 25.0, 0.235, 3.0}; }

struct LoopResult {
    std::vector<double> time;
    std::vector<double> position_error;
    std::vector<double> surface_eta;
    std::vector<double> surface_xi;
    std::vector<double> heading_error;
    double max_wheel_voltage = 0.0;
};

LoopResult run_tracking_loop(const RobotParams& params, RobotState robot,
                             ReferenceTrajectory& ref, const WheelDisturbance& dist,
                             double duration, double dt = 1e-3) {
    TrackingController controller({}, params);
    LoopResult result;
    const std::size_t steps = static_cast<std::size_t>(duration / dt);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = k * dt;
        const ReferencePoint& rp = ref.current();
        const WheelCommand cmd = controller.command(robot, rp, dt);
        result.time.push_back(t);
        result.position_error.push_back(std::hypot(robot.x - rp.x, robot.y - rp.y));
        result.surface_eta.push_back(controller.surface_eta());
        result.surface_xi.push_back(controller.surface_xi());
        result.heading_error.push_back(angle_diff(robot.theta, rp.theta));
        result.max_wheel_voltage =
            std::max({result.max_wheel_voltage, std::abs(cmd.right), std::abs(cmd.left)});
        robot = step(robot, cmd, dist, params, t, dt);
        ref.advance(dt);
    }
    return result;
}

}  // namespace

TEST_CASE("on-reference command is pure feedforward") {
    const RobotParams p = scenario_params();
    TrackingController controller({}, p);
    const double L = controller.look_ahead();

    ReferenceTrajectory ref(1.0, 0.0, kPi / 2, RateProfile::constant(0.5 * kPi, 0.5 * kPi, 10.0),
                            L);
    const ReferencePoint& rp = ref.current();
    // place the robot exactly on the reference
    TransformedState ts;
    ts.eta1 = rp.eta1;
    ts.xi1 = rp.xi1;
    ts.eta2 = rp.eta2;
    ts.xi2 = rp.xi2;
    ts.theta = rp.theta;
    const RobotState robot = inverse_transform(ts, L);

    const WheelCommand cmd = controller.command(robot, rp, 1e-3);
    CHECK(controller.surface_eta() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(controller.surface_xi() == doctest::Approx(0.0).epsilon(1e-9));

    // with zero error the wheels implement exactly the feedforward
    const BodyInputs expected = input_inverse(rp.eta2_dot, rp.xi2_dot, robot, p, L);
    const WheelCommand expected_cmd = wheel_commands(expected, p);
    CHECK(cmd.right == doctest::Approx(expected_cmd.right).epsilon(1e-9));
    CHECK(cmd.left == doctest::Approx(expected_cmd.left).epsilon(1e-9));
}

TEST_CASE("channel bounds match the closed forms") {
    const RobotParams baseline{3.85, 3.85, 0.235, 0.7};
    TrackingController controller({}, baseline);
    CHECK(controller.input_bound() == doctest::Approx(1.219787234042554).epsilon(1e-12));
    CHECK(baseline.max_steering_input() == doctest::Approx(5.957446808510638).epsilon(1e-12));
}

TEST_CASE("circular tracking converges from a 0.3 m offset") {
    const RobotParams p = scenario_params();
    const WheelDisturbance none{DisturbanceSignal::zero(), DisturbanceSignal::zero()};
    ReferenceTrajectory ref(1.0, 0.0, kPi / 2, RateProfile::constant(0.5 * kPi, 0.5 * kPi, 20.0),
                            0.5 * p.wheel_separation);
    RobotState robot{1.3, 0.0, kPi / 2, 0.0, 0.0};  // 0.3 m off the circle

    const LoopResult result = run_tracking_loop(p, robot, ref, none, 10.0);

    CHECK(result.max_wheel_voltage <= p.voltage_limit + 1e-12);
    double worst = 0.0;
    double worst_surface = 0.0;
    for (std::size_t k = 0; k < result.time.size(); ++k) {
        if (result.time[k] > 3.0) {
            worst = std::max(worst, result.position_error[k]);
            worst_surface = std::max({worst_surface, std::abs(result.surface_eta[k]),
                                      std::abs(result.surface_xi[k])});
        }
    }
    CHECK(worst < 1e-2);
    CHECK(worst_surface < 1e-3);
}

TEST_CASE("tracking rejects an in-class wheel disturbance") {
    const RobotParams p = scenario_params();
    const WheelDisturbance dist{DisturbanceSignal::sinusoid(0.3, 0.2, 0.0),
                                DisturbanceSignal::sinusoid(0.3, 0.15, 1.1)};
    ReferenceTrajectory ref(1.0, 0.0, kPi / 2, RateProfile::constant(0.5 * kPi, 0.5 * kPi, 20.0),
                            0.5 * p.wheel_separation);
    RobotState robot{1.3, 0.0, kPi / 2, 0.0, 0.0};

    const LoopResult result = run_tracking_loop(p, robot, ref, dist, 10.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < result.time.size(); ++k) {
        if (result.time[k] > 3.0) worst = std::max(worst, result.position_error[k]);
    }
    CHECK(worst < 3e-2);
}

TEST_CASE("heading zero dynamics") {
    // gentle circle keeps the transients inside the actuator envelope so
    // the reduced zero dynamics are visible: v_r = omega_r = 0.5
    const RobotParams p = scenario_params();
    const WheelDisturbance none{DisturbanceSignal::zero(), DisturbanceSignal::zero()};
    const double L = 0.5 * p.wheel_separation;
    const double phi = std::atan2(0.5, L * 0.5);

    const auto start_with_heading_error = [&](double heading_error) {
        ReferenceTrajectory ref(1.0, 0.0, kPi / 2, RateProfile::constant(0.5, 0.5, 30.0), L);
        const ReferencePoint& rp = ref.current();
        TransformedState ts;
        ts.eta1 = rp.eta1;
        ts.xi1 = rp.xi1;
        ts.eta2 = rp.eta2;
        ts.xi2 = rp.xi2;
        ts.theta = wrap_angle(rp.theta + heading_error);
        const RobotState robot = inverse_transform(ts, L);
        return run_tracking_loop(p, robot, ref, none, 8.0);
    };

    SUBCASE("moderate offset converges to zero") {
        const LoopResult r = start_with_heading_error(0.5);
        for (std::size_t k = 0; k < r.time.size(); ++k) {
            if (r.time[k] > 5.0) CHECK(std::abs(r.heading_error[k]) < 1e-3);
        }
    }
    SUBCASE("the second equilibrium repels") {
        const double unstable = wrap_angle(-2.0 * phi);
        const LoopResult r = start_with_heading_error(unstable + 0.01);
        // once the trajectory leaves the repelling equilibrium it never returns
        bool left = false;
        for (std::size_t k = 0; k < r.time.size(); ++k) {
            const double gap = std::abs(wrap_angle(r.heading_error[k] - unstable));
            if (left) CHECK(gap > 0.01);
            if (gap > 0.5) left = true;
        }
        CHECK(left);
        // and the stable equilibrium wins
        CHECK(std::abs(r.heading_error.back()) < 0.05);
    }
}
