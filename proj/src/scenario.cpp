#include "dp2c/scenario.hpp"

#include "dp2c/nonlocal.hpp"

#include <cmath>
#include <fstream>

namespace dp2c {
namespace {

using nlohmann::json;

RealField odd_antiderivative(const RealField& f) {
    // antiderivative of a zero-mean field, zero-mean constant; for even
    // input this is the odd primitive
    Spectrum F = to_spectrum(f);
    const int N = F.grid->N;
    for (int j = 0; j < N; ++j) {
        const double xi = F.grid->xi[j];
        F.c[j] = (j == 0) ? 0.0 : F.c[j] / std::complex<double>(0.0, xi);
    }
    F.c[N / 2] = 0.0;
    return from_spectrum(F);
}

} // namespace

State build_initial(const ScenarioSpec& spec) {
    const GridPtr grid = make_grid(spec.N, spec.L);
    State s;
    s.t = 0.0;
    s.c = spec.c;
    s.u = RealField(grid);
    s.rho = RealField(grid);
    const auto& id = spec.init;

    if (id.type == "zero") {
        // nothing to do
    } else if (id.type == "peakon") {
        s.u = peakon_field(id.a, 0.0, grid);
    } else if (id.type == "smoothed_peakon") {
        RealField pk = peakon_field(id.a, 0.0, grid);
        s.u = helmholtz_solve(pk, id.lambda);
        for (double& v : s.u.v) v *= id.lambda * id.lambda;
    } else if (id.type == "sine_family" || id.type == "thm52_family") {
        for (int j = 0; j < grid->N; ++j) {
            const double th = M_PI * grid->nodes[j] / grid->L;
            double u = 0.0, r = id.rho_const;
            for (size_t k = 0; k < id.u_sin.size(); ++k)
                u += id.u_sin[k] * std::sin((k + 1) * th);
            for (size_t k = 0; k < id.rho_cos.size(); ++k)
                r += id.rho_cos[k] * std::cos((k + 1) * th);
            s.u.v[j] = u;
            s.rho.v[j] = r;
        }
        if (id.type == "thm52_family") {
            const double c0 = std::cos(id.theta0);
            if (id.B != 0.0) {
                RealField w(grid);
                double mean = 0.0;
                for (int j = 0; j < grid->N; ++j) {
                    const double th = M_PI * grid->nodes[j] / grid->L;
                    w.v[j] = std::exp(-0.5 * std::pow((th - id.theta0) / id.sigma, 2)) +
                             std::exp(-0.5 * std::pow((th + id.theta0) / id.sigma, 2));
                    mean += w.v[j];
                }
                mean /= grid->N;
                for (double& v : w.v) v -= mean;
                const RealField S = odd_antiderivative(w);
                // theta-derivative pairing: d/dx = (pi/L) d/dtheta, so the
                // primitive is taken in x and scaled to give slope -B w
                for (int j = 0; j < grid->N; ++j) s.u.v[j] -= id.B * S.v[j];
            }
            for (int j = 0; j < grid->N; ++j) {
                const double th = M_PI * grid->nodes[j] / grid->L;
                s.u.v[j] -= id.gamma * std::sin(th);
                s.rho.v[j] +=
                    id.beta * (1.0 - std::cos(th)) * (std::cos(th) - c0);
            }
        }
    } else if (id.type == "custom_samples") {
        std::ifstream in(id.path);
        if (!in) throw std::invalid_argument("cannot open samples: " + id.path);
        for (int j = 0; j < grid->N; ++j)
            if (!(in >> s.u.v[j] >> s.rho.v[j]))
                throw std::invalid_argument("samples file too short: " + id.path);
    } else {
        throw std::invalid_argument("unknown initial_data type: " + id.type);
    }
    return s;
}

ScenarioSpec parse_spec(const json& j) {
    ScenarioSpec s;
    try {
        s.name = j.value("name", s.name);
        s.c = j.value("c", s.c);
        if (j.contains("grid")) {
            s.N = j.at("grid").value("N", s.N);
            s.L = j.at("grid").value("L", s.L);
        }
        if (j.contains("solver")) {
            const auto& sv = j.at("solver");
            s.solver.cfl = sv.value("cfl", s.solver.cfl);
            s.solver.dt_min = sv.value("dt_min", s.solver.dt_min);
            s.solver.slope_cap = sv.value("slope_cap", s.solver.slope_cap);
            s.solver.dealias_on = sv.value("dealias", s.solver.dealias_on);
            s.solver.filter_p = sv.value("filter_p", s.solver.filter_p);
        }
        s.t_max = j.value("t_max", s.t_max);
        if (j.contains("initial_data")) {
            const auto& id = j.at("initial_data");
            s.init.type = id.value("type", s.init.type);
            s.init.a = id.value("a", s.init.a);
            s.init.lambda = id.value("lambda", s.init.lambda);
            s.init.u_sin = id.value("u_sin", s.init.u_sin);
            s.init.rho_cos = id.value("rho_cos", s.init.rho_cos);
            s.init.rho_const = id.value("rho_const", s.init.rho_const);
            s.init.B = id.value("B", s.init.B);
            s.init.sigma = id.value("sigma", s.init.sigma);
            s.init.theta0 = id.value("theta0", s.init.theta0);
            s.init.gamma = id.value("gamma", s.init.gamma);
            s.init.beta = id.value("beta", s.init.beta);
            s.init.path = id.value("path", s.init.path);
        }
        if (j.contains("diagnostics")) {
            const auto& d = j.at("diagnostics");
            s.diag.characteristics = d.value("characteristics", s.diag.characteristics);
            s.diag.criteria = d.value("criteria", s.diag.criteria);
            s.diag.besov = d.value("besov", s.diag.besov);
            s.thm51_eps = d.value("thm51_eps", s.thm51_eps);
            if (d.contains("thm51_M")) s.thm51_M = d.at("thm51_M").get<double>();
            s.s_sob = d.value("s_sob", s.s_sob);
        }
        s.snapshot_times =
            j.value("snapshot_times", std::vector<double>{});
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad config: ") + e.what());
    }
    if (s.N < 16 || (s.N & (s.N - 1)) != 0)
        throw std::invalid_argument("grid.N must be a power of two, >= 16");
    if (!(s.L > 0.0)) throw std::invalid_argument("grid.L must be positive");
    if (!(s.t_max >= 0.0)) throw std::invalid_argument("t_max must be >= 0");
    if (!(s.solver.cfl > 0.0))
        throw std::invalid_argument("solver.cfl must be positive");
    static const char* kTypes[] = {"zero",        "peakon",
                                   "smoothed_peakon", "sine_family",
                                   "thm52_family", "custom_samples"};
    bool known = false;
    for (const char* t : kTypes) known = known || s.init.type == t;
    if (!known)
        throw std::invalid_argument("unknown initial_data.type: " + s.init.type);
    return s;
}

json spec_to_json(const ScenarioSpec& s) {
    json j;
    j["name"] = s.name;
    j["c"] = s.c;
    j["grid"] = {{"N", s.N}, {"L", s.L}};
    j["solver"] = {{"cfl", s.solver.cfl},
                   {"dt_min", s.solver.dt_min},
                   {"slope_cap", s.solver.slope_cap},
                   {"dealias", s.solver.dealias_on},
                   {"filter_p", s.solver.filter_p}};
    j["t_max"] = s.t_max;
    json id;
    id["type"] = s.init.type;
    if (s.init.type == "peakon" || s.init.type == "smoothed_peakon") {
        id["a"] = s.init.a;
        if (s.init.type == "smoothed_peakon") id["lambda"] = s.init.lambda;
    }
    if (s.init.type == "sine_family" || s.init.type == "thm52_family") {
        id["u_sin"] = s.init.u_sin;
        id["rho_cos"] = s.init.rho_cos;
        id["rho_const"] = s.init.rho_const;
    }
    if (s.init.type == "thm52_family") {
        id["B"] = s.init.B;
        id["sigma"] = s.init.sigma;
        id["theta0"] = s.init.theta0;
        id["gamma"] = s.init.gamma;
        id["beta"] = s.init.beta;
    }
    if (s.init.type == "custom_samples") id["path"] = s.init.path;
    j["initial_data"] = id;
    json d;
    d["characteristics"] = s.diag.characteristics;
    d["criteria"] = s.diag.criteria;
    d["besov"] = s.diag.besov;
    d["thm51_eps"] = s.thm51_eps;
    if (s.thm51_M) d["thm51_M"] = *s.thm51_M;
    d["s_sob"] = s.s_sob;
    j["diagnostics"] = d;
    j["snapshot_times"] = s.snapshot_times;
    return j;
}

std::vector<ScenarioSpec> scenario_registry() {
    std::vector<ScenarioSpec> reg;

    {
        ScenarioSpec s;
        s.name = "zero";
        s.N = 256;
        s.L = 10.0;
        s.t_max = 1.0;
        reg.push_back(s);
    }
    {
        // smooth run exercising the pointwise density invariant
        ScenarioSpec s;
        s.name = "smooth_conservation";
        s.init.type = "sine_family";
        s.init.u_sin = {0.5};
        s.init.rho_const = 0.3;
        s.init.rho_cos = {0.2};
        s.c = 1.0;
        s.N = 1024;
        s.L = 10.0;
        s.t_max = 2.0;
        s.solver.cfl = 0.5;
        s.diag.characteristics = true;
        reg.push_back(s);
    }
    {
        // odd/even breaking scenario with interior slope minimizer
        ScenarioSpec s;
        s.name = "wave_breaking";
        s.init.type = "thm52_family";
        s.init.u_sin = {-2.0, 0.8};
        s.init.beta = 0.02;
        s.init.theta0 = std::acos(0.3125);
        s.c = 1.0;
        s.N = 2048;
        s.L = M_PI;
        s.t_max = 3.0;
        s.solver.cfl = 0.5;
        s.solver.slope_cap = 50.0;
        s.solver.filter_p = 8;
        reg.push_back(s);
    }
    {
        ScenarioSpec s;
        s.name = "peakon";
        s.init.type = "smoothed_peakon";
        s.init.a = 1.0;
        s.init.lambda = 8.0;
        s.c = 0.0;
        s.N = 4096;
        s.L = 20.0;
        s.t_max = 1.0;
        s.solver.filter_p = 8;
        reg.push_back(s);
    }
    {
        // breaking scenario whose slope minimizer is pinned inside a sharp
        // velocity well, with the density vanishing there but sloped
        ScenarioSpec s;
        s.name = "density_gradient";
        s.init.type = "thm52_family";
        s.init.B = 4.0;
        s.init.sigma = 0.1;
        s.init.theta0 = 1.25;
        s.init.gamma = 0.5; // keeps the origin slope negative despite the
                            // mean-centering shift of the bump profile
        s.init.beta = 0.01;
        s.c = 1.0;
        s.N = 8192;
        s.L = M_PI;
        s.t_max = 3.0;
        s.solver.cfl = 0.4;
        s.solver.slope_cap = 50.0;
        s.solver.filter_p = 8;
        reg.push_back(s);
    }
    {
        ScenarioSpec s;
        s.name = "picard_small";
        s.init.type = "sine_family";
        s.init.u_sin = {0.1};
        s.init.rho_cos = {0.1};
        s.c = 1.0;
        s.N = 256;
        s.L = 10.0;
        s.t_max = 0.1;
        reg.push_back(s);
    }
    {
        // narrow domain makes the initial slope much steeper than the
        // amplitude, so the threshold criterion fires
        ScenarioSpec s;
        s.name = "steep_threshold";
        s.init.type = "sine_family";
        s.init.u_sin = {-1.0};
        s.c = 0.0;
        s.N = 1024;
        s.L = 0.1;
        s.t_max = 0.4;
        s.solver.slope_cap = 1000.0;
        s.solver.filter_p = 8;
        s.thm51_eps = 4.0;
        s.thm51_M = 1.0; // any M is admissible when rho0 is identically 0
        reg.push_back(s);
    }
    {
        ScenarioSpec s;
        s.name = "shallow_threshold";
        s.init.type = "sine_family";
        s.init.u_sin = {-0.05};
        s.c = 0.0;
        s.N = 256;
        s.L = M_PI;
        s.t_max = 5.0;
        s.thm51_eps = 4.0;
        s.thm51_M = 1.0;
        reg.push_back(s);
    }
    return reg;
}

ScenarioSpec registered_scenario(const std::string& name) {
    for (auto& s : scenario_registry())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown scenario: " + name);
}

} // namespace dp2c
