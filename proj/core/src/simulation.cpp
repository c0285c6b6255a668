#include "vsc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "vsc/dynamics.hpp"
#include "vsc/linearization.hpp"
#include "vsc/safety.hpp"
#include "vsc/tracking.hpp"

namespace vsc {

namespace {

// Flagging threshold for model-validity excursions of the alignment error
// while safety control is active.
constexpr double kAlignmentFlag = 0.3;

DisturbanceSignal build_signal(const DisturbanceSpec& spec, std::uint64_t seed, double horizon) {
    switch (spec.kind) {
        case DisturbanceSpec::Kind::kNone:
            return DisturbanceSignal::zero();
        case DisturbanceSpec::Kind::kConstant:
            return DisturbanceSignal::constant(spec.value);
        case DisturbanceSpec::Kind::kSinusoid:
            return DisturbanceSignal::sinusoid(spec.amplitude, spec.frequency_hz, spec.phase);
        case DisturbanceSpec::Kind::kRandomWalk:
            return DisturbanceSignal::random_walk(spec.bound, spec.lipschitz,
                                                  seed + spec.seed_offset, horizon);
    }
    return DisturbanceSignal::zero();
}

struct RobotRuntime {
    const RobotSpec* spec = nullptr;
    RobotState state;
    ReferenceTrajectory reference;
    TrackingController tracking;
    SafetyController safety;
    Supervisor supervisor;
    WheelDisturbance disturbance;
    std::size_t prev_safety_feature = kNoFeature;
    bool alignment_flagged = false;
    bool corner_flagged = false;

    RobotRuntime(const RobotSpec& s, const Supervisor::Config& sup_config, std::uint64_t seed,
                 double horizon, std::uint64_t index)
        : spec(&s),
          state(s.initial),
          reference(s.reference_x, s.reference_y, s.reference_theta, s.profile,
                    0.5 * s.params.wheel_separation),
          tracking(s.tracking, s.params),
          safety(s.safety, s.params, s.omega_ref_rate_feedforward),
          supervisor(sup_config) {
        disturbance.right = build_signal(s.disturbance_right, seed + 2 * index, horizon);
        disturbance.left = build_signal(s.disturbance_left, seed + 2 * index + 1, horizon);
    }
};

}  // namespace

Trace run(const Scenario& scenario) {
    Trace trace;
    scenario.validate(&trace.warnings);

    trace.scenario_name = scenario.name;
    trace.dt = scenario.dt;
    trace.features = scenario.features;

    Supervisor::Config sup_config;
    sup_config.body_text_release = scenario.body_text_release;

    std::vector<RobotRuntime> robots;
    robots.reserve(scenario.robots.size());
    for (std::size_t i = 0; i < scenario.robots.size(); ++i) {
        robots.emplace_back(scenario.robots[i], sup_config, scenario.seed, scenario.duration, i);
        trace.robot_names.push_back(scenario.robots[i].name);
    }

    const std::size_t n_steps = static_cast<std::size_t>(std::llround(scenario.duration / scenario.dt));
    trace.samples.assign(robots.size(), {});
    trace.clearance.assign(robots.size(), {});
    trace.transitions.assign(robots.size(), {});
    for (std::size_t i = 0; i < robots.size(); ++i) {
        trace.samples[i].reserve(n_steps);
        trace.clearance[i].assign(scenario.features.size(), {});
        for (auto& series : trace.clearance[i]) series.reserve(n_steps);
    }
    trace.time.reserve(n_steps);

    // near-unstable heading start check (spurious zero-dynamics equilibrium)
    for (std::size_t i = 0; i < robots.size(); ++i) {
        const ReferencePoint& rp = robots[i].reference.current();
        if (rp.omega != 0.0) {
            const double L = robots[i].tracking.look_ahead();
            const double phi = std::atan2(rp.v, L * rp.omega);
            const double heading_error = angle_diff(robots[i].state.theta, rp.theta);
            if (std::abs(wrap_angle(heading_error + 2.0 * phi)) < 0.05) {
                std::ostringstream os;
                os << "robot '" << trace.robot_names[i]
                   << "': initial heading error within 0.05 rad of the repelling equilibrium "
                      "-2*atan2(v_r, L*omega_r)";
                trace.warnings.push_back(os.str());
            }
        }
    }

    std::vector<RobotState> next_states(robots.size());

    for (std::size_t step_index = 0; step_index < n_steps; ++step_index) {
        const double t = static_cast<double>(step_index) * scenario.dt;

        // snapshot for moving-point features: all reads against pre-step state
        std::vector<Vec2> snapshot(robots.size());
        for (std::size_t i = 0; i < robots.size(); ++i) snapshot[i] = robots[i].state.position();

        trace.time.push_back(t);

        for (std::size_t i = 0; i < robots.size(); ++i) {
            RobotRuntime& robot = robots[i];
            const ReferencePoint& ref = robot.reference.current();

            // geometry queries: every feature, dominant by minimum distance
            std::optional<DistanceReading> dominant;
            const Feature* dominant_feature = nullptr;
            bool dominant_ref_in_zone = false;
            for (std::size_t f = 0; f < scenario.features.size(); ++f) {
                const Feature& feature = scenario.features[f];
                if (feature.kind == Feature::Kind::kMovingPoint && feature.robot_index == i) {
                    trace.clearance[i][f].push_back(
                        std::numeric_limits<double>::quiet_NaN());
                    continue;  // a robot is not its own obstacle
                }
                const Vec2 moving = feature.kind == Feature::Kind::kMovingPoint
                                        ? snapshot[feature.robot_index]
                                        : Vec2{};
                DistanceReading reading = observe(robot.state, feature, moving);
                reading.feature_index = f;
                trace.clearance[i][f].push_back(reading.distance);

                if (reading.degenerate || reading.distance <= 0.0) {
                    std::ostringstream os;
                    os << "robot '" << trace.robot_names[i] << "' violated feature '"
                       << feature.name << "' at t=" << t
                       << (reading.degenerate ? " (degenerate distance)" : " (non-positive clearance)");
                    trace.failed = true;
                    trace.failure = os.str();
                }
                if (!dominant || reading.distance < dominant->distance) {
                    dominant = reading;
                    dominant_feature = &feature;
                    dominant_ref_in_zone =
                        in_avoidance_zone(Vec2{ref.x, ref.y}, feature,
                                          feature.kind == Feature::Kind::kMovingPoint
                                              ? snapshot[feature.robot_index]
                                              : Vec2{});
                }
            }
            if (trace.failed) break;

            const BodyError err = body_error(robot.state, ref);

            Supervisor::Observation obs;
            if (dominant) {
                obs.robot_in_band = in_avoidance_zone(*dominant, *dominant_feature);
                obs.reference_in_zone = dominant_ref_in_zone;
                obs.lateral_error = err.lateral;
                obs.turn = dominant_feature->turn;
                obs.feature_mode = dominant_feature->mode;
                obs.feature_index = dominant->feature_index;
            }
            const Mode mode = robot.supervisor.update(obs, t);
            if (robot.supervisor.activation_pending_reset()) robot.safety.activate();

            RobotSample sample;
            sample.x = robot.state.x;
            sample.y = robot.state.y;
            sample.theta = robot.state.theta;
            sample.v = robot.state.v;
            sample.omega = robot.state.omega;
            sample.mode = mode;
            sample.clearance =
                dominant ? dominant->distance : std::numeric_limits<double>::infinity();
            sample.lateral_error = err.lateral;
            sample.ref_x = ref.x;
            sample.ref_y = ref.y;

            WheelCommand cmd;
            if (mode == Mode::kTracking) {
                cmd = robot.tracking.command(robot.state, ref, scenario.dt);
                sample.s_eta = robot.tracking.surface_eta();
                sample.s_xi = robot.tracking.surface_xi();
                robot.prev_safety_feature = kNoFeature;
            } else {
                SafetyController::Inputs in;
                in.reading = *dominant;
                in.safe_distance = dominant_feature->safe_distance;
                in.turn = dominant_feature->turn;
                in.feature_moving = dominant_feature->kind == Feature::Kind::kMovingPoint;
                in.feature_changed = robot.prev_safety_feature != dominant->feature_index;
                in.v_target = robot.spec->shadow_reference_speed
                                  ? shadow_speed(robot.state.theta, ref.theta, ref.v)
                                  : ref.v;
                cmd = robot.safety.command(robot.state, in, scenario.dt);
                sample.s_zeta = robot.safety.surface();
                robot.prev_safety_feature = dominant->feature_index;

                if (!robot.alignment_flagged &&
                    std::abs(robot.safety.alignment_error()) > kAlignmentFlag) {
                    // only flag settled operation, not the entry transient
                    const auto& ts = robot.supervisor.transitions();
                    if (!ts.empty() && t - ts.back().time > 1.0) {
                        std::ostringstream os;
                        os << "robot '" << trace.robot_names[i]
                           << "': |alignment error| > " << kAlignmentFlag
                           << " rad during settled safety control at t=" << t;
                        trace.warnings.push_back(os.str());
                        robot.alignment_flagged = true;
                    }
                }
                if (!robot.corner_flagged && dominant->at_vertex) {
                    std::ostringstream os;
                    os << "robot '" << trace.robot_names[i]
                       << "': closest point pinned at a polyline vertex at t=" << t;
                    trace.warnings.push_back(os.str());
                    robot.corner_flagged = true;
                }
            }
            sample.u_right = cmd.right;
            sample.u_left = cmd.left;
            trace.samples[i].push_back(sample);

            const int substeps = std::max(1, scenario.plant_substeps);
            const double plant_dt = scenario.dt / substeps;
            RobotState advanced = robot.state;
            for (int ss = 0; ss < substeps; ++ss) {
                advanced = step(advanced, cmd, robot.disturbance, robot.spec->params,
                                t + ss * plant_dt, plant_dt);
            }
            next_states[i] = advanced;
        }
        if (trace.failed) break;

        // commit phase
        for (std::size_t i = 0; i < robots.size(); ++i) {
            robots[i].state = next_states[i];
            const int substeps = std::max(1, scenario.plant_substeps);
            for (int ss = 0; ss < substeps; ++ss) {
                robots[i].reference.advance(scenario.dt / substeps);
            }
        }
    }

    if (trace.failed) {
        // keep the trace rectangular after an aborted step
        std::size_t n = trace.time.size();
        for (const auto& s : trace.samples) n = std::min(n, s.size());
        trace.time.resize(n);
        for (auto& s : trace.samples) s.resize(n);
        for (auto& per_robot : trace.clearance) {
            for (auto& series : per_robot) series.resize(std::min(series.size(), n));
        }
    }

    for (std::size_t i = 0; i < robots.size(); ++i) {
        trace.transitions[i] = robots[i].supervisor.transitions();
    }
    return trace;
}

Summary metrics(const Trace& trace) {
    Summary summary;
    summary.failed = trace.failed;

    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        RobotSummary rs;
        rs.robot = i < trace.robot_names.size() ? trace.robot_names[i] : "";
        rs.transition_count = i < trace.transitions.size() ? trace.transitions[i].size() : 0;

        double sq_sum = 0.0;
        std::size_t n_tracking = 0;
        for (const RobotSample& s : trace.samples[i]) {
            if (s.mode == Mode::kTracking) {
                const double dx = s.x - s.ref_x;
                const double dy = s.y - s.ref_y;
                sq_sum += dx * dx + dy * dy;
                ++n_tracking;
            }
        }
        rs.tracking_samples = n_tracking;
        rs.tracking_rms = n_tracking > 0 ? std::sqrt(sq_sum / static_cast<double>(n_tracking)) : 0.0;

        for (std::size_t f = 0; f < trace.features.size(); ++f) {
            if (i >= trace.clearance.size() || f >= trace.clearance[i].size()) continue;
            const std::vector<double>& series = trace.clearance[i][f];
            FeatureSummary fs;
            fs.feature = trace.features[f].name;
            fs.threshold = 0.9 * trace.features[f].safe_distance;
            double min_v = std::numeric_limits<double>::infinity();
            double sum = 0.0;
            std::size_t count = 0;
            std::size_t above = 0;
            for (double d : series) {
                if (std::isnan(d)) continue;
                min_v = std::min(min_v, d);
                sum += d;
                ++count;
                if (d >= fs.threshold) ++above;
            }
            if (count == 0) continue;  // robot's own moving-point feature
            fs.min_clearance = min_v;
            fs.mean_clearance = sum / static_cast<double>(count);
            fs.fraction_above_threshold =
                static_cast<double>(above) / static_cast<double>(count);
            rs.features.push_back(fs);
        }
        summary.robots.push_back(std::move(rs));
    }
    return summary;
}

}  // namespace vsc
