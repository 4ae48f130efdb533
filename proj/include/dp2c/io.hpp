#pragma once
// Run orchestration and on-disk artifacts: series.csv, summary.json,
// binary field snapshots, and sweep tables.

#include "dp2c/scenario.hpp"
#include "dp2c/solver.hpp"

#include <filesystem>

namespace dp2c {

// fixed column order, one row per diagnostics record
extern const char* kSeriesHeader;

void write_series_csv(const std::filesystem::path& path,
                      const DiagnosticsSeries& series);

// flat binary snapshot: uint64 N, then L, t, u[0..N-1], rho[0..N-1]
// as little-endian 64-bit values
void write_snapshot(const std::filesystem::path& path, const State& s);
State read_snapshot(const std::filesystem::path& path);

struct RunOutcome {
    int exit_code = 0; // 0 ok, 1 config, 2 io, 3 nonfinite
    RunResult result;
    nlohmann::json summary;
};

// evolves the scenario and writes series.csv / summary.json / snapshots
RunOutcome run_scenario(const ScenarioSpec& spec,
                        const std::filesystem::path& outdir);

// one run per value of the dotted config path `axis`; subdirectories
// value_0, value_1, ... plus a consolidated sweep.csv
int sweep_scenarios(const nlohmann::json& base_config, const std::string& axis,
                    const std::vector<double>& values, int threads,
                    const std::filesystem::path& outdir);

// dotted-path override applied to a JSON config ("solver.cfl=0.4")
void apply_override(nlohmann::json& config, const std::string& assignment);

} // namespace dp2c
