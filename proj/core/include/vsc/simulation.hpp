#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsc/scenario.hpp"
#include "vsc/supervisor.hpp"

namespace vsc {

/// One trace row for one robot. Values are the pre-step state, the command
/// applied over the step, and the controller diagnostics that produced it.
struct RobotSample {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double v = 0.0;
    double omega = 0.0;
    double u_right = 0.0;
    double u_left = 0.0;
    Mode mode = Mode::kTracking;
    double clearance = 0.0;      // signed distance of the dominant feature
    double lateral_error = 0.0;  // e_y vs the reference
    double s_eta = 0.0;
    double s_xi = 0.0;
    double s_zeta = 0.0;
    double ref_x = 0.0;
    double ref_y = 0.0;
};

struct Trace {
    std::string scenario_name;
    double dt = 0.0;
    std::vector<std::string> robot_names;
    std::vector<Feature> features;
    std::vector<double> time;
    // samples[robot][step]
    std::vector<std::vector<RobotSample>> samples;
    // clearance[robot][feature][step]: signed distance series per feature
    std::vector<std::vector<std::vector<double>>> clearance;
    std::vector<std::vector<Transition>> transitions;
    std::vector<std::string> warnings;
    bool failed = false;
    std::string failure;

    std::size_t steps() const { return time.size(); }
};

Trace run(const Scenario& scenario);

struct FeatureSummary {
    std::string feature;
    double min_clearance = 0.0;
    double mean_clearance = 0.0;
    /// Fraction of samples with clearance >= 0.9 * safe_distance.
    double fraction_above_threshold = 0.0;
    double threshold = 0.0;
};

struct RobotSummary {
    std::string robot;
    double tracking_rms = 0.0;  // position RMS over tracking-mode samples
    std::size_t tracking_samples = 0;
    std::size_t transition_count = 0;
    std::vector<FeatureSummary> features;
};

struct Summary {
    std::vector<RobotSummary> robots;
    bool failed = false;
};

Summary metrics(const Trace& trace);

}  // namespace vsc
