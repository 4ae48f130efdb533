#pragma once
// Scenario descriptions: initial-data families, grid/solver settings and
// diagnostic switches, with JSON round-tripping and a registry of the
// scenarios exercised by the acceptance suite.

#include "dp2c/state.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace dp2c {

struct InitialData {
    std::string type = "zero"; // zero | peakon | smoothed_peakon |
                               // sine_family | thm52_family | custom_samples
    double a = 1.0;            // peakon speed/amplitude
    double lambda = 8.0;       // smoothing scale for smoothed_peakon
    // sine_family: u0 = sum u_sin[i] sin((i+1) theta), theta = pi x / L,
    // rho0 = rho_const + sum rho_cos[i] cos((i+1) theta)
    std::vector<double> u_sin;
    std::vector<double> rho_cos;
    double rho_const = 0.0;
    // thm52_family: u0 = -gamma sin(theta) - B S(theta) with S the odd
    // antiderivative of the centered twin-bump profile at +-theta0 (width
    // sigma), plus the u_sin terms; rho0 = beta (1-cos)(cos - cos(theta0))
    double B = 0.0;
    double sigma = 0.1;
    double theta0 = 1.25;
    double gamma = 0.0;
    double beta = 0.0;
    std::string path; // custom_samples: text file, one "u rho" pair per line
};

struct DiagnosticsFlags {
    bool characteristics = false;
    bool criteria = true;
    bool besov = false;
};

struct ScenarioSpec {
    std::string name = "unnamed";
    InitialData init;
    double c = 0.0;
    int N = 256;
    double L = 10.0;
    SolverConfig solver;
    double t_max = 1.0;
    DiagnosticsFlags diag;
    double thm51_eps = 4.0;
    std::optional<double> thm51_M; // default 2 max(1, ||u0'||_inf)
    double s_sob = 2.0;
    std::vector<double> snapshot_times;
};

ScenarioSpec parse_spec(const nlohmann::json& j);
nlohmann::json spec_to_json(const ScenarioSpec& spec);

State build_initial(const ScenarioSpec& spec);

std::vector<ScenarioSpec> scenario_registry();
ScenarioSpec registered_scenario(const std::string& name);

} // namespace dp2c
