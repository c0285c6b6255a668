#include "vsc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vsc/linearization.hpp"
#include "vsc/sta.hpp"

namespace vsc {

using nlohmann::json;

double DisturbanceSpec::declared_bound() const {
    switch (kind) {
        case Kind::kNone: return 0.0;
        case Kind::kConstant: return std::abs(value);
        case Kind::kSinusoid: return std::abs(amplitude);
        case Kind::kRandomWalk: return bound;
    }
    return 0.0;
}

double DisturbanceSpec::declared_lipschitz() const {
    switch (kind) {
        case Kind::kNone:
        case Kind::kConstant: return 0.0;
        case Kind::kSinusoid: return std::abs(amplitude) * 2.0 * kPi * frequency_hz;
        case Kind::kRandomWalk: return lipschitz;
    }
    return 0.0;
}

ScenarioError::ScenarioError(std::vector<std::string> v)
    : std::runtime_error([&v] {
          std::string msg = "scenario configuration invalid:";
          for (const std::string& s : v) msg += "\n  - " + s;
          return msg;
      }()),
      violations(std::move(v)) {}

namespace {

// Unknown keys are configuration errors; typos in safety-critical configs
// must not pass silently.
void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ScenarioError({where + ": expected an object"});
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ScenarioError({where + ": unknown key '" + item.key() + "'"});
        }
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ScenarioError({where + ": missing key '" + key + "'"});
    if (!obj.at(key).is_number()) throw ScenarioError({where + ": '" + key + "' must be a number"});
    return obj.at(key).get<double>();
}

double get_number_or(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<double>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ScenarioError({where + ": missing key '" + key + "'"});
    if (!obj.at(key).is_string()) throw ScenarioError({where + ": '" + key + "' must be a string"});
    return obj.at(key).get<std::string>();
}

DisturbanceSpec parse_disturbance(const json& obj, const std::string& where) {
    DisturbanceSpec spec;
    if (obj.is_null()) return spec;
    const std::string kind = get_string(obj, where, "kind");
    if (kind == "none") {
        require_keys(obj, where, {"kind"});
    } else if (kind == "constant") {
        require_keys(obj, where, {"kind", "value_mps2"});
        spec.kind = DisturbanceSpec::Kind::kConstant;
        spec.value = get_number(obj, where, "value_mps2");
    } else if (kind == "sinusoid") {
        require_keys(obj, where, {"kind", "amplitude_mps2", "frequency_hz", "phase_rad"});
        spec.kind = DisturbanceSpec::Kind::kSinusoid;
        spec.amplitude = get_number(obj, where, "amplitude_mps2");
        spec.frequency_hz = get_number(obj, where, "frequency_hz");
        spec.phase = get_number_or(obj, "phase_rad", 0.0);
    } else if (kind == "random_walk") {
        require_keys(obj, where, {"kind", "bound_mps2", "lipschitz_mps3", "seed_offset"});
        spec.kind = DisturbanceSpec::Kind::kRandomWalk;
        spec.bound = get_number(obj, where, "bound_mps2");
        spec.lipschitz = get_number(obj, where, "lipschitz_mps3");
        spec.seed_offset = obj.value("seed_offset", 0);
    } else {
        throw ScenarioError({where + ": unknown disturbance kind '" + kind + "'"});
    }
    return spec;
}

RateProfile parse_profile(const json& obj, const std::string& where) {
    if (!obj.is_array() || obj.empty()) {
        throw ScenarioError({where + ": 'segments' must be a non-empty array"});
    }
    std::vector<RateSegment> segments;
    for (std::size_t i = 0; i < obj.size(); ++i) {
        const json& seg = obj.at(i);
        const std::string segwhere = where + "[" + std::to_string(i) + "]";
        const std::string kind = get_string(seg, segwhere, "kind");
        RateSegment out;
        out.duration = get_number(seg, segwhere, "duration_s");
        if (kind == "constant") {
            require_keys(seg, segwhere, {"kind", "duration_s", "v_mps", "omega_radps"});
            out.kind = RateSegment::Kind::kConstant;
            out.v = get_number(seg, segwhere, "v_mps");
            out.omega = get_number(seg, segwhere, "omega_radps");
        } else if (kind == "sinusoid") {
            require_keys(seg, segwhere,
                         {"kind", "duration_s", "v_mps", "omega_radps", "v_amplitude_mps",
                          "omega_amplitude_radps", "frequency_hz", "phase_rad"});
            out.kind = RateSegment::Kind::kSinusoid;
            out.v = get_number(seg, segwhere, "v_mps");
            out.omega = get_number(seg, segwhere, "omega_radps");
            out.v_amplitude = get_number_or(seg, "v_amplitude_mps", 0.0);
            out.omega_amplitude = get_number_or(seg, "omega_amplitude_radps", 0.0);
            out.frequency_hz = get_number(seg, segwhere, "frequency_hz");
            out.phase = get_number_or(seg, "phase_rad", 0.0);
        } else {
            throw ScenarioError({segwhere + ": unknown segment kind '" + kind + "'"});
        }
        segments.push_back(out);
    }
    try {
        return RateProfile(std::move(segments));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError({where + ": " + e.what()});
    }
}

RobotSpec parse_robot(const json& obj, const std::string& where) {
    require_keys(obj, where,
                 {"name", "params", "initial", "reference", "tracking_gains", "safety_gains",
                  "shadow_reference_speed", "omega_ref_rate_feedforward", "disturbance"});
    RobotSpec spec;
    spec.name = get_string(obj, where, "name");

    const json& p = obj.at("params");
    require_keys(p, where + ".params",
                 {"motor_pole_per_s", "motor_gain_mps2_per_v", "wheel_separation_m",
                  "voltage_limit_v"});
    spec.params.motor_pole = get_number(p, where + ".params", "motor_pole_per_s");
    spec.params.motor_gain = get_number(p, where + ".params", "motor_gain_mps2_per_v");
    spec.params.wheel_separation = get_number(p, where + ".params", "wheel_separation_m");
    spec.params.voltage_limit = get_number(p, where + ".params", "voltage_limit_v");

    const json& init = obj.at("initial");
    require_keys(init, where + ".initial", {"x_m", "y_m", "theta_rad", "v_mps", "omega_radps"});
    spec.initial.x = get_number(init, where + ".initial", "x_m");
    spec.initial.y = get_number(init, where + ".initial", "y_m");
    spec.initial.theta = wrap_angle(get_number(init, where + ".initial", "theta_rad"));
    spec.initial.v = get_number_or(init, "v_mps", 0.0);
    spec.initial.omega = get_number_or(init, "omega_radps", 0.0);

    const json& ref = obj.at("reference");
    require_keys(ref, where + ".reference", {"x_m", "y_m", "theta_rad", "segments"});
    spec.reference_x = get_number(ref, where + ".reference", "x_m");
    spec.reference_y = get_number(ref, where + ".reference", "y_m");
    spec.reference_theta = get_number(ref, where + ".reference", "theta_rad");
    spec.profile = parse_profile(ref.at("segments"), where + ".reference.segments");

    const json& tg = obj.at("tracking_gains");
    require_keys(tg, where + ".tracking_gains",
                 {"surface_slope_per_s", "sqrt_gain", "integral_gain"});
    spec.tracking.surface_slope = get_number(tg, where + ".tracking_gains", "surface_slope_per_s");
    spec.tracking.sqrt_gain = get_number(tg, where + ".tracking_gains", "sqrt_gain");
    spec.tracking.integral_gain = get_number(tg, where + ".tracking_gains", "integral_gain");

    const json& sg = obj.at("safety_gains");
    require_keys(sg, where + ".safety_gains",
                 {"surface_slope_per_s", "sqrt_gain", "integral_gain", "velocity_gain_per_s",
                  "steering_gain_per_s"});
    spec.safety.surface_slope = get_number(sg, where + ".safety_gains", "surface_slope_per_s");
    spec.safety.sqrt_gain = get_number(sg, where + ".safety_gains", "sqrt_gain");
    spec.safety.integral_gain = get_number(sg, where + ".safety_gains", "integral_gain");
    spec.safety.velocity_gain = get_number(sg, where + ".safety_gains", "velocity_gain_per_s");
    spec.safety.steering_gain = get_number(sg, where + ".safety_gains", "steering_gain_per_s");

    spec.shadow_reference_speed = obj.value("shadow_reference_speed", false);
    spec.omega_ref_rate_feedforward = obj.value("omega_ref_rate_feedforward", false);

    if (obj.contains("disturbance")) {
        const json& d = obj.at("disturbance");
        require_keys(d, where + ".disturbance", {"right", "left"});
        if (d.contains("right")) {
            spec.disturbance_right = parse_disturbance(d.at("right"), where + ".disturbance.right");
        }
        if (d.contains("left")) {
            spec.disturbance_left = parse_disturbance(d.at("left"), where + ".disturbance.left");
        }
    }
    return spec;
}

Feature parse_feature(const json& obj, const std::string& where,
                      const std::vector<RobotSpec>& robots) {
    const std::string kind = get_string(obj, where, "kind");
    Feature f;
    f.name = get_string(obj, where, "name");
    const std::set<std::string> common = {"kind",  "name",        "mode",
                                          "turn",  "safe_distance_m", "band_width_m"};
    if (kind == "disc") {
        std::set<std::string> keys = common;
        keys.insert("center_m");
        keys.insert("radius_m");
        require_keys(obj, where, keys);
        f.kind = Feature::Kind::kDisc;
        const json& c = obj.at("center_m");
        if (!c.is_array() || c.size() != 2) {
            throw ScenarioError({where + ": 'center_m' must be [x, y]"});
        }
        f.center = {c.at(0).get<double>(), c.at(1).get<double>()};
        f.radius = get_number_or(obj, "radius_m", 0.0);
    } else if (kind == "polyline") {
        std::set<std::string> keys = common;
        keys.insert("vertices_m");
        require_keys(obj, where, keys);
        f.kind = Feature::Kind::kPolyline;
        const json& vs = obj.at("vertices_m");
        if (!vs.is_array()) throw ScenarioError({where + ": 'vertices_m' must be an array"});
        for (const json& v : vs) {
            if (!v.is_array() || v.size() != 2) {
                throw ScenarioError({where + ": each vertex must be [x, y]"});
            }
            f.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
    } else if (kind == "robot") {
        std::set<std::string> keys = common;
        keys.insert("robot");
        require_keys(obj, where, keys);
        f.kind = Feature::Kind::kMovingPoint;
        const std::string robot_name = get_string(obj, where, "robot");
        f.robot_index = kNoFeature;
        for (std::size_t i = 0; i < robots.size(); ++i) {
            if (robots[i].name == robot_name) f.robot_index = i;
        }
        if (f.robot_index == kNoFeature) {
            throw ScenarioError({where + ": unknown robot '" + robot_name + "'"});
        }
    } else {
        throw ScenarioError({where + ": unknown feature kind '" + kind + "'"});
    }

    const std::string mode = get_string(obj, where, "mode");
    if (mode == "avoid_outside") {
        f.mode = FeatureMode::kAvoidOutside;
    } else if (mode == "keep_inside") {
        f.mode = FeatureMode::kKeepInside;
    } else {
        throw ScenarioError({where + ": unknown mode '" + mode + "'"});
    }

    const std::string turn = obj.value("turn", "counterclockwise");
    if (turn == "counterclockwise") {
        f.turn = TurnDirection::kCounterclockwise;
    } else if (turn == "clockwise") {
        f.turn = TurnDirection::kClockwise;
    } else {
        throw ScenarioError({where + ": unknown turn '" + turn + "'"});
    }

    f.safe_distance = get_number(obj, where, "safe_distance_m");
    f.band_width = get_number(obj, where, "band_width_m");
    return f;
}

}  // namespace

Scenario Scenario::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError({"cannot open scenario file: " + path.string()});
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

Scenario Scenario::from_json_text(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError({std::string("JSON parse error: ") + e.what()});
    }
    require_keys(root, "scenario",
                 {"name", "description", "dt_s", "duration_s", "seed", "body_text_release",
                  "robots", "environment"});
    Scenario sc;
    sc.name = get_string(root, "scenario", "name");
    sc.description = root.value("description", "");
    sc.dt = get_number_or(root, "dt_s", 1e-3);
    sc.duration = get_number(root, "scenario", "duration_s");
    sc.seed = root.value("seed", 0);
    sc.body_text_release = root.value("body_text_release", false);

    if (!root.contains("robots") || !root.at("robots").is_array() || root.at("robots").empty()) {
        throw ScenarioError({"scenario: 'robots' must be a non-empty array"});
    }
    for (std::size_t i = 0; i < root.at("robots").size(); ++i) {
        sc.robots.push_back(
            parse_robot(root.at("robots").at(i), "robots[" + std::to_string(i) + "]"));
    }

    if (root.contains("environment")) {
        const json& env = root.at("environment");
        require_keys(env, "environment", {"features"});
        if (env.contains("features")) {
            const json& fs = env.at("features");
            if (!fs.is_array()) throw ScenarioError({"environment.features must be an array"});
            for (std::size_t i = 0; i < fs.size(); ++i) {
                sc.features.push_back(parse_feature(
                    fs.at(i), "environment.features[" + std::to_string(i) + "]", sc.robots));
            }
        }
    }
    return sc;
}

void Scenario::validate(std::vector<std::string>* warnings) const {
    std::vector<std::string> violations;
    const auto check = [&](bool ok, const std::string& msg) {
        if (!ok) violations.push_back(msg);
    };

    check(dt > 0.0, "dt_s must be > 0");
    check(duration >= 0.0, "duration_s must be >= 0");
    check(plant_substeps >= 1, "plant_substeps must be >= 1");

    for (const RobotSpec& r : robots) {
        const std::string who = "robot '" + r.name + "'";
        try {
            r.params.validate();
        } catch (const std::invalid_argument& e) {
            violations.push_back(who + ": " + e.what());
            continue;
        }
        const LookAheadInterval interval = admissible_look_ahead(r.params);
        check(interval.contains(0.5 * r.params.wheel_separation),
              who + ": look-ahead d/2 outside admissible interval");
        check(std::abs(r.initial.v) <= r.params.max_linear_speed() + 1e-12,
              who + ": |v(0)| exceeds bU/a");
        check(std::abs(r.initial.omega) <= r.params.max_angular_speed() + 1e-12,
              who + ": |omega(0)| exceeds 2bU/(ad)");
        check(r.profile.total_duration() + 1e-9 >= duration,
              who + ": reference profile shorter than scenario duration");

        const double lip = std::max(r.disturbance_right.declared_lipschitz(),
                                    r.disturbance_left.declared_lipschitz());
        StaGains tracking_gains;
        tracking_gains.sqrt_gain = r.tracking.sqrt_gain;
        tracking_gains.integral_gain = r.tracking.integral_gain;
        const GainCheck gc = validate_gains(tracking_gains, lip);
        check(gc.ok(), who + ": tracking gains fail validation: " + gc.report());

        check(r.tracking.surface_slope > 0.0, who + ": tracking surface slope must be > 0");
        check(r.safety.surface_slope > 0.0 && r.safety.sqrt_gain > 0.0 &&
                  r.safety.integral_gain > 0.0 && r.safety.velocity_gain > 0.0 &&
                  r.safety.steering_gain > 0.0,
              who + ": safety gains must be > 0");

        if (warnings) {
            StaGains safety_gains;
            safety_gains.sqrt_gain = r.safety.sqrt_gain;
            safety_gains.integral_gain = r.safety.integral_gain;
            const GainCheck sg = validate_gains(safety_gains, lip);
            if (!sg.ok()) {
                warnings->push_back(who +
                                    ": safety gains vs declared wheel disturbance (advisory): " +
                                    sg.report());
            }
        }
    }

    for (const Feature& f : features) {
        for (const RobotSpec& r : robots) {
            try {
                f.validate(r.params.wheel_separation);
            } catch (const std::invalid_argument& e) {
                violations.push_back(e.what());
                break;
            }
        }
        if (f.kind == Feature::Kind::kMovingPoint) {
            check(f.robot_index < robots.size(), "feature '" + f.name + "': bad robot index");
        }
    }

    if (!violations.empty()) throw ScenarioError(std::move(violations));
}

std::vector<GainReportLine> admissibility_report(const Scenario& scenario) {
    std::vector<GainReportLine> lines;
    const auto add = [&](bool ok, bool advisory, const std::string& text) {
        lines.push_back({ok, advisory, text});
    };
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);

    for (const RobotSpec& r : scenario.robots) {
        const RobotParams& p = r.params;
        const double admissible = p.admissible_voltage_limit();
        {
            std::ostringstream o;
            o << "robot '" << r.name << "': U < a^2 d / b: " << p.voltage_limit << " < "
              << admissible << " (margin " << admissible - p.voltage_limit << ")";
            add(p.voltage_limit < admissible, false, o.str());
        }
        const LookAheadInterval li = admissible_look_ahead(p);
        {
            const double L = 0.5 * p.wheel_separation;
            std::ostringstream o;
            o << "robot '" << r.name << "': look-ahead d/2 = " << L << " in (" << li.lower << ", "
              << li.upper << ")";
            add(li.contains(L), false, o.str());
        }
        {
            std::ostringstream o;
            o << "robot '" << r.name << "': velocity bounds bU/a = " << p.max_linear_speed()
              << " m/s, 2bU/(ad) = " << p.max_angular_speed() << " rad/s";
            add(true, false, o.str());
        }
        const double lip = std::max(r.disturbance_right.declared_lipschitz(),
                                    r.disturbance_left.declared_lipschitz());
        {
            StaGains g;
            g.sqrt_gain = r.tracking.sqrt_gain;
            g.integral_gain = r.tracking.integral_gain;
            const GainCheck gc = validate_gains(g, lip);
            std::ostringstream o;
            o << "robot '" << r.name << "': tracking STA gains vs L=" << lip << ": " << gc.report();
            add(gc.ok(), false, o.str());
        }
        {
            StaGains g;
            g.sqrt_gain = r.safety.sqrt_gain;
            g.integral_gain = r.safety.integral_gain;
            const GainCheck gc = validate_gains(g, lip);
            std::ostringstream o;
            o << "robot '" << r.name << "': safety STA gains vs declared wheel L=" << lip
              << " (advisory, composed bound unknown): " << gc.report();
            add(gc.ok(), true, o.str());
        }
    }

    for (const Feature& f : scenario.features) {
        for (const RobotSpec& r : scenario.robots) {
            std::ostringstream o;
            o << "feature '" << f.name << "' vs robot '" << r.name
              << "': safe_distance > d/2: " << f.safe_distance << " > "
              << 0.5 * r.params.wheel_separation << " (margin "
              << f.safe_distance - 0.5 * r.params.wheel_separation << ")";
            add(f.safe_distance > 0.5 * r.params.wheel_separation, false, o.str());
        }
        std::ostringstream o;
        o << "feature '" << f.name << "': band_width <= 0.2 safe_distance: " << f.band_width
          << " <= " << 0.2 * f.safe_distance;
        add(f.band_width > 0.0 && f.band_width <= 0.2 * f.safe_distance, false, o.str());
    }
    return lines;
}

}  // namespace vsc
