#include <benchmark/benchmark.h>

#include <cmath>

#include "vsc/dynamics.hpp"
#include "vsc/geometry.hpp"
#include "vsc/reference.hpp"
#include "vsc/sta.hpp"
#include "vsc/tracking.hpp"

namespace {

vsc::RobotParams bench_params() { return {25.0, 25.0, 0.235, 3.0}; }

void BM_PlantStep(benchmark::State& state) {
    const vsc::RobotParams params = bench_params();
    const vsc::WheelDisturbance dist{vsc::DisturbanceSignal::sinusoid(0.3, 0.2),
                                     vsc::DisturbanceSignal::sinusoid(0.3, 0.15, 1.0)};
    vsc::RobotState robot{0.0, 0.0, 0.3, 0.5, 0.1};
    const vsc::WheelCommand cmd{0.4, 0.3};
    double t = 0.0;
    for (auto _ : state) {
        robot = vsc::step(robot, cmd, dist, params, t, 1e-3);
        t += 1e-3;
        benchmark::DoNotOptimize(robot);
    }
}
BENCHMARK(BM_PlantStep);

void BM_TrackingCommand(benchmark::State& state) {
    const vsc::RobotParams params = bench_params();
    vsc::TrackingController controller({}, params);
    vsc::ReferenceTrajectory ref(1.0, 0.0, vsc::kPi / 2,
                                 vsc::RateProfile::constant(0.5 * vsc::kPi, 0.5 * vsc::kPi, 1e6),
                                 0.5 * params.wheel_separation);
    vsc::RobotState robot{0.9, 0.1, 1.5, 1.2, 1.4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(controller.command(robot, ref.current(), 1e-3));
    }
}
BENCHMARK(BM_TrackingCommand);

void BM_ClosestPointPolyline(benchmark::State& state) {
    vsc::Feature border;
    border.kind = vsc::Feature::Kind::kPolyline;
    border.mode = vsc::FeatureMode::kKeepInside;
    border.safe_distance = 0.5;
    border.band_width = 0.1;
    const int n = static_cast<int>(state.range(0));
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * vsc::kPi * i / n;
        border.vertices.push_back({1.2 * std::cos(a), 0.9 * std::sin(a)});
    }
    const vsc::Vec2 p{0.4, 0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(vsc::closest_point(p, border));
    }
}
BENCHMARK(BM_ClosestPointPolyline)->Arg(16)->Arg(64)->Arg(256);

void BM_StaControl(benchmark::State& state) {
    vsc::StaGains gains;
    gains.sqrt_gain = 2.0;
    gains.integral_gain = 0.5;
    gains.surface_slope = 10.0;
    gains.output_limit = 8.0;
    vsc::StaChannel channel(gains);
    double sigma = 0.4;
    for (auto _ : state) {
        const double w = channel.control(sigma, 0.1, 1e-3);
        sigma = 0.9 * sigma + 1e-4 * w;
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_StaControl);

}  // namespace

BENCHMARK_MAIN();
