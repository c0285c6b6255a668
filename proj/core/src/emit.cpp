#include "vsc/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace vsc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct Bounds {
    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void include(double x, double y) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    void pad(double p) {
        min_x -= p;
        max_x += p;
        min_y -= p;
        max_y += p;
    }
};

const char* mode_color(Mode mode) {
    switch (mode) {
        case Mode::kTracking: return "#1f6fb2";
        case Mode::kAvoid: return "#2c9e4b";
        case Mode::kHold: return "#8a56c2";
    }
    return "#000000";
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& out) {
    out << "t";
    for (const std::string& name : trace.robot_names) {
        for (const char* col : {"x", "y", "theta", "v", "omega", "u_r", "u_l", "mode", "d_o",
                                "e_y", "s_eta", "s_xi", "s_zeta"}) {
            out << ',' << name << '_' << col;
        }
    }
    out << '\n';

    for (std::size_t k = 0; k < trace.steps(); ++k) {
        out << fmt(trace.time[k]);
        for (std::size_t i = 0; i < trace.samples.size(); ++i) {
            const RobotSample& s = trace.samples[i][k];
            out << ',' << fmt(s.x) << ',' << fmt(s.y) << ',' << fmt(s.theta) << ',' << fmt(s.v)
                << ',' << fmt(s.omega) << ',' << fmt(s.u_right) << ',' << fmt(s.u_left) << ','
                << mode_label(s.mode) << ',' << fmt(s.clearance) << ',' << fmt(s.lateral_error)
                << ',' << fmt(s.s_eta) << ',' << fmt(s.s_xi) << ',' << fmt(s.s_zeta);
        }
        out << '\n';
    }
}

std::string trace_csv(const Trace& trace) {
    std::ostringstream os;
    write_trace_csv(trace, os);
    return os.str();
}

void write_summary(const Trace& trace, const Summary& summary, std::ostream& out) {
    out << "scenario: " << trace.scenario_name << '\n';
    out << "status: " << (trace.failed ? "FAILED" : "OK") << '\n';
    if (trace.failed) out << "failure: " << trace.failure << '\n';
    out << "steps: " << trace.steps() << "  dt_s: " << fmt(trace.dt) << '\n';

    for (const RobotSummary& rs : summary.robots) {
        out << "robot " << rs.robot << ":\n";
        out << "  tracking_rms_m: " << fmt(rs.tracking_rms) << " over " << rs.tracking_samples
            << " tracking samples\n";
        out << "  transitions: " << rs.transition_count << '\n';
        for (const FeatureSummary& fs : rs.features) {
            out << "  feature " << fs.feature << ": min_m " << fmt(fs.min_clearance) << "  mean_m "
                << fmt(fs.mean_clearance) << "  fraction_above_" << fmt(fs.threshold) << " "
                << fmt(fs.fraction_above_threshold) << '\n';
        }
    }

    out << "transition log:\n";
    for (std::size_t i = 0; i < trace.transitions.size(); ++i) {
        for (const Transition& tr : trace.transitions[i]) {
            out << "  " << fmt(tr.time) << "s " << trace.robot_names[i] << " "
                << mode_label(tr.from) << "->" << mode_label(tr.to) << " (" << tr.trigger << ")\n";
        }
    }
    if (!trace.warnings.empty()) {
        out << "warnings:\n";
        for (const std::string& w : trace.warnings) out << "  " << w << '\n';
    }
}

std::string summary_text(const Trace& trace, const Summary& summary) {
    std::ostringstream os;
    write_summary(trace, summary, os);
    return os.str();
}

void write_svg(const Trace& trace, std::ostream& out) {
    Bounds bounds;
    for (const auto& robot : trace.samples) {
        for (const RobotSample& s : robot) bounds.include(s.x, s.y);
    }
    for (const Feature& f : trace.features) {
        if (f.kind == Feature::Kind::kDisc) {
            const double r = f.radius + f.safe_distance + f.band_width;
            bounds.include(f.center.x - r, f.center.y - r);
            bounds.include(f.center.x + r, f.center.y + r);
        } else if (f.kind == Feature::Kind::kPolyline) {
            for (const Vec2& v : f.vertices) bounds.include(v.x, v.y);
        }
    }
    if (trace.samples.empty() || trace.steps() == 0) bounds.include(0.0, 0.0);
    bounds.pad(0.3);

    const double scale = 240.0;
    const double w = (bounds.max_x - bounds.min_x) * scale;
    const double h = (bounds.max_y - bounds.min_y) * scale;
    const auto X = [&](double x) { return (x - bounds.min_x) * scale; };
    const auto Y = [&](double y) { return h - (y - bounds.min_y) * scale; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
        << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << ' ' << fmt(h) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // features: body, standoff contour, avoidance band
    for (const Feature& f : trace.features) {
        if (f.kind == Feature::Kind::kDisc) {
            out << "<circle class=\"feature-band\" cx=\"" << fmt(X(f.center.x)) << "\" cy=\""
                << fmt(Y(f.center.y)) << "\" r=\""
                << fmt((f.radius + f.safe_distance + f.band_width) * scale)
                << "\" fill=\"#2c9e4b\" fill-opacity=\"0.12\" stroke=\"none\"/>\n";
            out << "<circle cx=\"" << fmt(X(f.center.x)) << "\" cy=\"" << fmt(Y(f.center.y))
                << "\" r=\"" << fmt((f.radius + f.safe_distance) * scale)
                << "\" fill=\"none\" stroke=\"#c23b3b\" stroke-dasharray=\"6 4\"/>\n";
            out << "<circle cx=\"" << fmt(X(f.center.x)) << "\" cy=\"" << fmt(Y(f.center.y))
                << "\" r=\"" << fmt(std::max(f.radius, 0.01) * scale)
                << "\" fill=\"#444444\"/>\n";
        } else if (f.kind == Feature::Kind::kPolyline) {
            const auto polyline_path = [&](const std::vector<Vec2>& vs) {
                std::ostringstream p;
                for (std::size_t i = 0; i < vs.size(); ++i) {
                    p << (i == 0 ? 'M' : 'L') << fmt(X(vs[i].x)) << ' ' << fmt(Y(vs[i].y));
                }
                p << 'Z';
                return p.str();
            };
            // standoff contour approximated by bisector-offset vertices
            const std::size_t n = f.vertices.size();
            std::vector<Vec2> offset(n);
            const double sign = f.mode == FeatureMode::kKeepInside ? 1.0 : -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2& prev = f.vertices[(i + n - 1) % n];
                const Vec2& here = f.vertices[i];
                const Vec2& next = f.vertices[(i + 1) % n];
                Vec2 d1 = here - prev;
                Vec2 d2 = next - here;
                const double n1 = d1.norm(), n2 = d2.norm();
                if (n1 > 0) d1 = d1 * (1.0 / n1);
                if (n2 > 0) d2 = d2 * (1.0 / n2);
                Vec2 normal{-(d1.y + d2.y), d1.x + d2.x};
                const double nn = normal.norm();
                if (nn > 1e-9) normal = normal * (1.0 / nn);
                // polygon orientation decides which side is inside
                double area = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const Vec2& a = f.vertices[k];
                    const Vec2& b = f.vertices[(k + 1) % n];
                    area += a.x * b.y - b.x * a.y;
                }
                const double orient = area >= 0.0 ? 1.0 : -1.0;
                offset[i] = here + (sign * orient * f.safe_distance) * normal;
            }
            out << "<path class=\"feature-band\" d=\"" << polyline_path(offset)
                << "\" fill=\"none\" stroke=\"#c23b3b\" stroke-dasharray=\"6 4\"/>\n";
            out << "<path d=\"" << polyline_path(f.vertices)
                << "\" fill=\"none\" stroke=\"#c23b3b\" stroke-width=\"2\"/>\n";
        } else {
            // moving point: band drawn at the final position
            if (!trace.samples.empty() && trace.steps() > 0 &&
                f.robot_index < trace.samples.size()) {
                const RobotSample& s = trace.samples[f.robot_index].back();
                out << "<circle class=\"feature-band\" cx=\"" << fmt(X(s.x)) << "\" cy=\""
                    << fmt(Y(s.y)) << "\" r=\"" << fmt((f.safe_distance + f.band_width) * scale)
                    << "\" fill=\"#2c9e4b\" fill-opacity=\"0.10\" stroke=\"none\"/>\n";
            }
        }
    }

    // robot paths split into supervisor-mode segments
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const auto& samples = trace.samples[i];
        std::size_t start = 0;
        while (start < samples.size()) {
            std::size_t end = start + 1;
            while (end < samples.size() && samples[end].mode == samples[start].mode) ++end;
            std::ostringstream path;
            for (std::size_t k = start; k < std::min(end + 1, samples.size()); ++k) {
                path << (k == start ? 'M' : 'L') << fmt(X(samples[k].x)) << ' '
                     << fmt(Y(samples[k].y));
            }
            out << "<path class=\"robot-path\" d=\"" << path.str()
                << "\" fill=\"none\" stroke=\"" << mode_color(samples[start].mode)
                << "\" stroke-width=\"1.5\"/>\n";
            start = end;
        }
        if (!samples.empty()) {
            const RobotSample& last = samples.back();
            out << "<circle cx=\"" << fmt(X(last.x)) << "\" cy=\"" << fmt(Y(last.y))
                << "\" r=\"4\" fill=\"" << mode_color(last.mode) << "\"/>\n";
        }
    }
    out << "</svg>\n";
}

std::string svg_text(const Trace& trace) {
    std::ostringstream os;
    write_svg(trace, os);
    return os.str();
}

std::filesystem::path emit_run(const Trace& trace, const Summary& summary,
                               const std::filesystem::path& directory, bool with_svg) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + directory.string());

    const std::filesystem::path trace_path = directory / (trace.scenario_name + "_trace.csv");
    {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + trace_path.string());
        write_trace_csv(trace, out);
    }
    {
        const std::filesystem::path p = directory / (trace.scenario_name + "_summary.txt");
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        write_summary(trace, summary, out);
    }
    if (with_svg) {
        const std::filesystem::path p = directory / (trace.scenario_name + ".svg");
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        write_svg(trace, out);
    }
    return trace_path;
}

}  // namespace vsc
