// CLI entry point: run a scenario, sweep a parameter, or verify the
// acceptance suite.
//
// Exit codes: 0 success (blow-up terminations included), 1 config error,
// 2 I/O error, 3 nonfinite-state abort.

#include "dp2c/acceptance.hpp"
#include "dp2c/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

nlohmann::json load_config(const std::string& path,
                           const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    for (const auto& o : overrides) dp2c::apply_override(j, o);
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral simulator and verification harness for a "
                 "two-component shallow-water system"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", axis;
    std::vector<std::string> overrides;
    std::vector<double> values;
    int threads = 1;

    auto* run = app.add_subcommand("run", "run one scenario");
    run->add_option("--config", config_path, "scenario JSON")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--override", overrides, "dotted-path override key=value");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--config", config_path, "base scenario JSON")->required();
    sweep->add_option("--axis", axis, "dotted path of the swept field")->required();
    sweep->add_option("--values", values, "swept values, comma separated")
        ->required()
        ->delimiter(',');
    sweep->add_option("--threads", threads, "parallel runs");
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--override", overrides, "dotted-path override key=value");

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--out", out_dir, "artifact directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const nlohmann::json cfg = load_config(config_path, overrides);
            const dp2c::ScenarioSpec spec = dp2c::parse_spec(cfg);
            const dp2c::RunOutcome oc = dp2c::run_scenario(spec, out_dir);
            if (oc.exit_code != 0 && oc.summary.contains("error"))
                std::cerr << "error: " << oc.summary["error"] << "\n";
            else
                std::cout << oc.summary.value("termination", "?") << " at t="
                          << oc.summary.value("t_final", 0.0) << "\n";
            return oc.exit_code;
        }
        if (sweep->parsed()) {
            const nlohmann::json cfg = load_config(config_path, overrides);
            return dp2c::sweep_scenarios(cfg, axis, values, threads, out_dir);
        }
        if (verify->parsed()) {
            const auto checks = dp2c::run_acceptance(out_dir);
            bool all = true;
            for (const auto& c : checks) {
                std::printf("%-4s %s  %s\n", c.id.c_str(),
                            c.pass ? "PASS" : "FAIL", c.detail.c_str());
                all = all && c.pass;
            }
            return all ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
