#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "vsc/simulation.hpp"

namespace vsc {

/// Comma-separated trace with a header row; floats printed with 9
/// significant digits. Columns per robot: x, y, theta, v, omega, u_r, u_l,
/// mode, d_o, e_y, s_eta, s_xi, s_zeta, prefixed by the robot name.
void write_trace_csv(const Trace& trace, std::ostream& out);
std::string trace_csv(const Trace& trace);

/// Human-readable run summary: per-robot metrics, per-feature clearance
/// statistics, the transition log, and any warnings.
void write_summary(const Trace& trace, const Summary& summary, std::ostream& out);
std::string summary_text(const Trace& trace, const Summary& summary);

/// Static SVG of the run: one path per robot per supervisor-mode segment,
/// features with their standoff contour and avoidance band.
void write_svg(const Trace& trace, std::ostream& out);
std::string svg_text(const Trace& trace);

/// Writes <name>_trace.csv, <name>_summary.txt and optionally <name>.svg
/// into `directory`, creating it if needed. Returns the trace path.
std::filesystem::path emit_run(const Trace& trace, const Summary& summary,
                               const std::filesystem::path& directory, bool with_svg);

}  // namespace vsc
