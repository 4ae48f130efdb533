#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dp2c/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dp2c;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
    fs::path p = fs::temp_directory_path() / (std::string("dp2c_") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("config round trips") {
    for (const ScenarioSpec& spec : scenario_registry()) {
        const nlohmann::json j = spec_to_json(spec);
        const ScenarioSpec back = parse_spec(j);
        CHECK(spec_to_json(back) == j);
        CHECK(back.name == spec.name);
        CHECK(back.N == spec.N);
        CHECK(back.L == spec.L);
        CHECK(back.c == spec.c);
        CHECK(back.t_max == spec.t_max);
        CHECK(back.solver.cfl == spec.solver.cfl);
        CHECK(back.solver.slope_cap == spec.solver.slope_cap);
        CHECK(back.init.type == spec.init.type);
        CHECK(back.thm51_M == spec.thm51_M);
    }

    CHECK_THROWS_AS(parse_spec(nlohmann::json{{"grid", {{"N", 100}}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_spec(nlohmann::json{
                        {"initial_data", {{"type", "no_such_family"}}}}),
                    std::invalid_argument);
}

TEST_CASE("shipped configs match the registry") {
    const fs::path dir = fs::path(DP2C_SOURCE_DIR) / "configs";
    for (const ScenarioSpec& spec : scenario_registry()) {
        const fs::path file = dir / (spec.name + ".json");
        REQUIRE(fs::exists(file));
        const nlohmann::json on_disk = nlohmann::json::parse(slurp(file));
        CHECK(on_disk == spec_to_json(spec));
    }
}

TEST_CASE("snapshot round trip") {
    auto g = make_grid(64, 3.0);
    State s;
    s.t = 0.625;
    s.c = 2.0;
    s.u = RealField(g);
    s.rho = RealField(g);
    for (int j = 0; j < g->N; ++j) {
        s.u.v[j] = std::sin(M_PI * g->nodes[j] / g->L) + 1e-7 * j;
        s.rho.v[j] = 0.1 * j;
    }
    const fs::path dir = temp_dir("snap");
    write_snapshot(dir / "f.bin", s);
    const State back = read_snapshot(dir / "f.bin");
    CHECK(back.t == s.t);
    CHECK(back.u.grid->N == 64);
    CHECK(back.u.grid->L == 3.0);
    for (int j = 0; j < g->N; ++j) {
        CHECK(back.u.v[j] == s.u.v[j]);
        CHECK(back.rho.v[j] == s.rho.v[j]);
    }
    CHECK_THROWS(read_snapshot(dir / "missing.bin"));
}

TEST_CASE("overrides") {
    nlohmann::json cfg = spec_to_json(registered_scenario("zero"));
    apply_override(cfg, "solver.cfl=0.25");
    CHECK(cfg["solver"]["cfl"] == 0.25);
    apply_override(cfg, "N=512");
    CHECK(cfg["N"] == 512);
    apply_override(cfg, "init.type=sine_family");
    CHECK(cfg["init"]["type"] == "sine_family");
    apply_override(cfg, "init.u_sin=[0.1,0.2]");
    CHECK(cfg["init"]["u_sin"] == nlohmann::json::array({0.1, 0.2}));
    CHECK_THROWS_AS(apply_override(cfg, "no_equals_sign"),
                    std::invalid_argument);
}

TEST_CASE("zero scenario runs and is deterministic") {
    ScenarioSpec spec = registered_scenario("zero");
    spec.N = 64;
    spec.t_max = 0.3;

    const fs::path d1 = temp_dir("run1"), d2 = temp_dir("run2");
    const RunOutcome o1 = run_scenario(spec, d1);
    const RunOutcome o2 = run_scenario(spec, d2);
    CHECK(o1.exit_code == 0);
    CHECK(o1.result.termination == Termination::completed);
    CHECK(o1.summary["termination"] == "completed");
    CHECK(o1.summary["classify"]["verdict"] == "global_so_far");
    CHECK(o1.summary["fit_rate"].is_null());
    REQUIRE(fs::exists(d1 / "series.csv"));
    REQUIRE(fs::exists(d1 / "summary.json"));
    CHECK(slurp(d1 / "series.csv") == slurp(d2 / "series.csv"));
    CHECK(o1.summary == o2.summary);

    const std::string csv = slurp(d1 / "series.csv");
    CHECK(csv.rfind(kSeriesHeader, 0) == 0);
}

TEST_CASE("snapshots written at requested times") {
    ScenarioSpec spec = registered_scenario("zero");
    spec.N = 64;
    spec.t_max = 0.3;
    spec.snapshot_times = {0.0, 0.15};
    const fs::path d = temp_dir("snaps");
    const RunOutcome o = run_scenario(spec, d);
    CHECK(o.exit_code == 0);
    REQUIRE(fs::exists(d / "fields_000.bin"));
    REQUIRE(fs::exists(d / "fields_001.bin"));
    CHECK(read_snapshot(d / "fields_000.bin").t == 0.0);
    CHECK(read_snapshot(d / "fields_001.bin").t >= 0.15);
}

TEST_CASE("bad initial data is a config error") {
    ScenarioSpec spec = registered_scenario("zero");
    spec.init.type = "custom_samples";
    spec.init.path = "/nonexistent/file.txt";
    const RunOutcome o = run_scenario(spec, temp_dir("bad"));
    CHECK(o.exit_code == 1);
}

TEST_CASE("sweep") {
    ScenarioSpec spec = registered_scenario("picard_small");
    spec.N = 64;
    spec.t_max = 0.05;
    const nlohmann::json base = spec_to_json(spec);

    const fs::path d = temp_dir("sweep");
    const int rc = sweep_scenarios(base, "c", {0.0, 1.0, 4.0}, 2, d);
    CHECK(rc == 0);
    REQUIRE(fs::exists(d / "sweep.csv"));
    const std::string csv = slurp(d / "sweep.csv");
    int rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 4); // header + one per value
    for (int i = 0; i < 3; ++i) {
        const fs::path sub = d / ("value_" + std::to_string(i));
        CHECK(fs::exists(sub / "summary.json"));
    }

    const int rc_empty = sweep_scenarios(base, "c", {}, 1, temp_dir("sweep0"));
    CHECK(rc_empty == 0);
}
