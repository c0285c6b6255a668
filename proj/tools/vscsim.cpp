// vscsim: batch scenario runner for the vsc control library.
//
// Exit codes: 0 = run completed with all safety invariants held,
// 1 = configuration error, 2 = safety violation (FAILED trace).

#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <vector>

#include <CLI11.hpp>

#include "vsc/emit.hpp"
#include "vsc/scenario.hpp"
#include "vsc/simulation.hpp"

namespace fs = std::filesystem;

namespace {

fs::path default_out_dir() {
    if (const char* env = std::getenv("VSCSIM_OUT_DIR")) return fs::path(env);
    return fs::path("out");
}

struct RunResult {
    std::string name;
    int code = 0;
    std::string message;
};

RunResult run_one(const fs::path& file, const fs::path& out_dir, bool svg,
                  std::optional<double> dt_override, std::optional<std::uint64_t> seed_override) {
    RunResult result;
    result.name = file.string();
    try {
        vsc::Scenario scenario = vsc::Scenario::from_file(file);
        if (dt_override) scenario.dt = *dt_override;
        if (seed_override) scenario.seed = *seed_override;
        scenario.validate();

        const vsc::Trace trace = vsc::run(scenario);
        const vsc::Summary summary = vsc::metrics(trace);
        const fs::path trace_path = vsc::emit_run(trace, summary, out_dir, svg);

        if (trace.failed) {
            result.code = 2;
            result.message = trace.failure;
        } else {
            result.message = "trace: " + trace_path.string();
        }
    } catch (const vsc::ScenarioError& e) {
        result.code = 1;
        result.message = e.what();
    } catch (const std::exception& e) {
        result.code = 1;
        result.message = e.what();
    }
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vsc scenario simulator"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string batch_dir;
    std::string out_dir = default_out_dir().string();
    bool svg = false;
    double dt = 0.0;
    std::uint64_t seed = 0;
    bool dt_set = false;
    bool seed_set = false;
    unsigned jobs = 0;

    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario file");
    run_cmd->add_option("scenario", scenario_file, "scenario JSON file")->required();
    run_cmd->add_option("--out", out_dir, "output directory (default $VSCSIM_OUT_DIR or ./out)");
    run_cmd->add_option("--dt", dt, "integration step override, seconds")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { dt_set = true; });
    run_cmd->add_flag("--svg", svg, "emit an SVG plot");
    run_cmd->add_option("--seed", seed, "random seed override")
        ->each([&](const std::string&) { seed_set = true; });

    CLI::App* batch_cmd = app.add_subcommand("batch", "run every scenario in a directory");
    batch_cmd->add_option("dir", batch_dir, "directory of scenario JSON files")->required();
    batch_cmd->add_option("--out", out_dir, "output directory");
    batch_cmd->add_flag("--svg", svg, "emit SVG plots");
    batch_cmd->add_option("--jobs", jobs, "parallel runs (default: hardware concurrency)");

    CLI::App* validate_cmd =
        app.add_subcommand("validate-gains", "print every admissibility check with margins");
    validate_cmd->add_option("scenario", scenario_file, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        const RunResult r =
            run_one(scenario_file, out_dir, svg,
                    dt_set ? std::optional<double>(dt) : std::nullopt,
                    seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt);
        std::cout << (r.code == 0 ? "OK      " : r.code == 2 ? "UNSAFE  " : "invalid ") << r.name
                  << '\n';
        if (!r.message.empty()) std::cout << r.message << '\n';
        return r.code;
    }

    if (batch_cmd->parsed()) {
        std::vector<fs::path> files;
        try {
            for (const auto& entry : fs::directory_iterator(batch_dir)) {
                if (entry.is_regular_file() && entry.path().extension() == ".json") {
                    files.push_back(entry.path());
                }
            }
        } catch (const std::exception& e) {
            std::cerr << "cannot read directory: " << e.what() << '\n';
            return 1;
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            std::cerr << "no scenario files in " << batch_dir << '\n';
            return 1;
        }

        // each run is isolated; launch them concurrently
        std::vector<std::future<RunResult>> futures;
        futures.reserve(files.size());
        for (const fs::path& f : files) {
            futures.push_back(std::async(std::launch::async, run_one, f, fs::path(out_dir), svg,
                                         std::nullopt, std::nullopt));
        }
        int code = 0;
        for (auto& fut : futures) {
            const RunResult r = fut.get();
            std::cout << (r.code == 0 ? "OK      " : r.code == 2 ? "UNSAFE  " : "invalid ")
                      << r.name << '\n';
            if (r.code != 0 && !r.message.empty()) std::cout << "  " << r.message << '\n';
            code = std::max(code, r.code);
        }
        return code;
    }

    // validate-gains
    try {
        const vsc::Scenario scenario = vsc::Scenario::from_file(scenario_file);
        bool all_ok = true;
        for (const vsc::GainReportLine& line : vsc::admissibility_report(scenario)) {
            std::cout << (line.ok ? "[ok]   " : line.advisory ? "[warn] " : "[FAIL] ") << line.text
                      << '\n';
            if (!line.ok && !line.advisory) all_ok = false;
        }
        try {
            scenario.validate();
        } catch (const vsc::ScenarioError& e) {
            for (const std::string& v : e.violations) std::cout << "[FAIL] " << v << '\n';
            all_ok = false;
        }
        return all_ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
