#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vsc/geometry.hpp"
#include "vsc/reference.hpp"
#include "vsc/safety.hpp"
#include "vsc/tracking.hpp"
#include "vsc/types.hpp"

namespace vsc {

/// Wheel-disturbance generator selection for one wheel.
struct DisturbanceSpec {
    enum class Kind { kNone, kConstant, kSinusoid, kRandomWalk };
    Kind kind = Kind::kNone;
    double value = 0.0;       // constant
    double amplitude = 0.0;   // sinusoid
    double frequency_hz = 0.0;
    double phase = 0.0;
    double bound = 0.0;       // random walk
    double lipschitz = 0.0;
    std::uint64_t seed_offset = 0;

    double declared_bound() const;
    double declared_lipschitz() const;
};

struct RobotSpec {
    std::string name;
    RobotParams params;
    RobotState initial;
    TrackingGains tracking;
    SafetyGains safety;
    double reference_x = 0.0;
    double reference_y = 0.0;
    double reference_theta = 0.0;
    RateProfile profile;
    bool shadow_reference_speed = false;
    bool omega_ref_rate_feedforward = false;
    DisturbanceSpec disturbance_right;
    DisturbanceSpec disturbance_left;
};

/// Configuration error with the full list of violated checks.
struct ScenarioError : std::runtime_error {
    explicit ScenarioError(std::vector<std::string> violations);
    std::vector<std::string> violations;
};

struct Scenario {
    std::string name;
    std::string description;
    double dt = 1e-3;
    double duration = 0.0;
    std::uint64_t seed = 0;
    bool body_text_release = false;
    /// Plant/reference integration substeps per controller period. Used by
    /// the integration-adequacy check; the controllers and supervisor
    /// always tick at dt.
    int plant_substeps = 1;
    std::vector<RobotSpec> robots;
    std::vector<Feature> features;

    static Scenario from_file(const std::filesystem::path& path);
    static Scenario from_json_text(std::string_view text);

    /// Runs every admissibility check (actuator bound, safe distances,
    /// band widths, look-ahead interval, tracking-gain inequalities,
    /// initial-velocity bounds). Throws ScenarioError listing all
    /// violations. Advisory safety-channel gain notes are appended to
    /// `warnings` when given.
    void validate(std::vector<std::string>* warnings = nullptr) const;
};

/// One line per admissibility check, with margins; used by the CLI.
struct GainReportLine {
    bool ok = false;
    bool advisory = false;
    std::string text;
};

std::vector<GainReportLine> admissibility_report(const Scenario& scenario);

}  // namespace vsc
