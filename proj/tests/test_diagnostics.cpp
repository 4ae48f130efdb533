#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dp2c/diagnostics.hpp"
#include "dp2c/scenario.hpp"
#include "dp2c/spline.hpp"

#include <cmath>
#include <random>

using namespace dp2c;

namespace {

State make_state(const GridPtr& g, double c = 0.0) {
    State s;
    s.t = 0.0;
    s.c = c;
    s.u = RealField(g);
    s.rho = RealField(g);
    return s;
}

RealField band_limited(const GridPtr& g, unsigned seed, int max_mode) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    RealField f(g);
    for (int k = 1; k <= max_mode; ++k) {
        const double a = gauss(rng) / k, b = gauss(rng) / k;
        for (int j = 0; j < g->N; ++j) {
            const double th = M_PI * k * g->nodes[j] / g->L;
            f.v[j] += a * std::cos(th) + b * std::sin(th);
        }
    }
    return f;
}

} // namespace

TEST_CASE("single record") {
    auto g = make_grid(512, M_PI);

    const DiagnosticsRecord z = record(make_state(g));
    CHECK(z.m == 0.0);
    CHECK(z.u_inf == 0.0);
    CHECK(z.rho_l2 == 0.0);
    CHECK(z.int_m == 0.0);

    State s = make_state(g);
    for (int j = 0; j < g->N; ++j) s.u.v[j] = std::sin(g->nodes[j]);
    const DiagnosticsRecord r = record(s);
    CHECK(r.m == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::fabs(std::fabs(r.xi) - M_PI) <= 1e-6);
    CHECK(r.u_x_at_0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.u_inf == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.u_l2 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
    CHECK(r.ux_inf == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("slope minimum against dense sampling") {
    auto g = make_grid(512, M_PI);
    State s = make_state(g);
    s.u = band_limited(g, 41, 10);
    const DiagnosticsRecord r = record(s);

    const RealField ux = spectral_derivative(s.u, 1);
    std::vector<double> pts;
    const int M = 16 * g->N;
    for (int i = 0; i < M; ++i) pts.push_back(-g->L + i * (2.0 * g->L / M));
    const std::vector<double> dense = trig_eval(ux, pts);
    double best = dense[0], best_x = pts[0];
    for (int i = 1; i < M; ++i)
        if (dense[i] < best) {
            best = dense[i];
            best_x = pts[i];
        }
    // the dense grid itself only locates the minimum to O((dx/16)^2)
    CHECK(std::fabs(r.m - best) <= 2e-5);
    CHECK(std::fabs(r.xi - best_x) <= 2e-3);
    CHECK(r.m <= best + 1e-10); // refinement never over-reports
}

TEST_CASE("argmin continuity under ties") {
    auto g = make_grid(256, M_PI);
    State s = make_state(g);
    for (int j = 0; j < g->N; ++j) s.u.v[j] = std::sin(2.0 * g->nodes[j]);
    // u_x = 2 cos(2x): four degenerate minima at +-pi/2, +-pi(-ish)
    const DiagnosticsRecord fresh = record(s);
    CHECK(2.0 * std::cos(2.0 * fresh.xi) ==
          doctest::Approx(-2.0).epsilon(1e-9));

    const DiagnosticsRecord near_neg = record(s, -M_PI / 2 + 0.01);
    CHECK(near_neg.xi == doctest::Approx(-M_PI / 2).epsilon(1e-6));
    const DiagnosticsRecord near_pos = record(s, M_PI / 2 - 0.01);
    CHECK(near_pos.xi == doctest::Approx(M_PI / 2).epsilon(1e-6));
}

TEST_CASE("series bookkeeping") {
    auto g = make_grid(128, M_PI);
    DiagnosticsSeries series;
    for (int i = 0; i < 3; ++i) {
        State s = make_state(g);
        const double a = 1.0 + i;
        for (int j = 0; j < g->N; ++j) s.u.v[j] = a * std::sin(g->nodes[j]);
        s.t = 0.1 * i;
        series.append(s);
    }
    REQUIRE(series.records.size() == 3);
    CHECK(series.records[0].int_m == 0.0);
    CHECK(series.records[1].int_m == doctest::Approx(-0.15).epsilon(1e-9));
    CHECK(series.records[2].int_m == doctest::Approx(-0.40).epsilon(1e-9));

    State again = make_state(g);
    again.t = 0.2; // not strictly increasing
    CHECK_THROWS_AS(series.append(again), std::invalid_argument);
}

TEST_CASE("classification") {
    SolverConfig cfg;
    cfg.slope_cap = 100.0;

    DiagnosticsSeries flat;
    for (int i = 0; i < 30; ++i) {
        DiagnosticsRecord r;
        r.t = 0.01 * i;
        r.m = -1.0 - 0.001 * i;
        r.ux_inf = 1.0;
        flat.records.push_back(r);
    }
    const ClassifyResult cf = classify(flat, cfg);
    CHECK(cf.verdict == Verdict::global_so_far);
    CHECK(cf.int_ux_inf == doctest::Approx(0.29).epsilon(1e-9));

    DiagnosticsSeries steep = flat;
    for (int i = 0; i < 12; ++i) {
        DiagnosticsRecord r;
        r.t = 0.3 + 0.01 * i;
        r.m = -10.0 * std::pow(1.3, i) - 10.0;
        r.ux_inf = -r.m;
        steep.records.push_back(r);
    }
    steep.records.back().m = -150.0; // beyond the cap, still decreasing
    CHECK(classify(steep, cfg).verdict == Verdict::blowup);

    // deep but not monotone at the tail: not classified as breaking
    DiagnosticsSeries wobble = steep;
    wobble.records[wobble.records.size() - 4].m = -20.0;
    CHECK(classify(wobble, cfg).verdict == Verdict::global_so_far);
}

TEST_CASE("rate fit on synthetic data") {
    SolverConfig cfg;
    cfg.slope_cap = 1e4;
    const double T = 1.0;
    for (double alpha : {1.0, 2.0}) {
        DiagnosticsSeries series;
        for (int i = 0; i < 60; ++i) {
            DiagnosticsRecord r;
            r.t = 0.80 + 0.003 * i;
            r.m = -alpha / (T - r.t);
            series.records.push_back(r);
        }
        const auto fit = fit_rate(series, cfg);
        REQUIRE(fit.has_value());
        CHECK(fit->slope == doctest::Approx(1.0 / alpha).epsilon(1e-10));
        CHECK(fit->T_est == doctest::Approx(T).epsilon(1e-10));
        CHECK(fit->r2 >= 0.999999);
        CHECK(fit->n_points >= 20);
    }

    DiagnosticsSeries shallow;
    for (int i = 0; i < 60; ++i) {
        DiagnosticsRecord r;
        r.t = 0.01 * i;
        r.m = -1.0;
        shallow.records.push_back(r);
    }
    CHECK(!fit_rate(shallow, cfg).has_value());
}

TEST_CASE("threshold criterion fixture") {
    auto g = make_grid(512, M_PI);
    RealField u0(g), rho0(g);
    for (int j = 0; j < g->N; ++j) u0.v[j] = -std::sin(g->nodes[j]);

    const CriterionReport rep = criterion_thm51(u0, rho0, 0.0, 2.0, 1.0, 2.0);
    CHECK(rep.applicable);
    const double T_star = std::log(2.0);
    const double J = 3.0 * T_star * M_PI + 1.0;
    const double K = std::sqrt(0.75 * 16.0 + 1.5 * J * J);
    CHECK(rep.quantities.at("T_star") == doctest::Approx(T_star).epsilon(1e-12));
    CHECK(rep.quantities.at("J") == doctest::Approx(J).epsilon(1e-9));
    CHECK(rep.quantities.at("K") == doctest::Approx(K).epsilon(1e-9));
    CHECK(rep.quantities.at("rho0_sobolev") == 0.0);
    CHECK(rep.quantities.at("min_u0_prime") ==
          doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(rep.quantities.at("threshold") ==
          doctest::Approx(-3.0 * K).epsilon(1e-9));
    // -1 is far above -3K: no prediction
    CHECK(rep.verdict == CriterionVerdict::inconclusive);
    CHECK(!rep.predicted_T.has_value());

    const CriterionReport zero = criterion_thm51(RealField(g), rho0, 1.0, 2.0,
                                                 1.0, 2.0);
    CHECK(zero.verdict == CriterionVerdict::inconclusive);
}

TEST_CASE("threshold criterion fires on the steep registered scenario") {
    const ScenarioSpec spec = registered_scenario("steep_threshold");
    const State s0 = build_initial(spec);
    REQUIRE(spec.thm51_M.has_value());
    const CriterionReport rep = criterion_thm51(
        s0.u, s0.rho, spec.c, spec.thm51_eps, *spec.thm51_M, spec.s_sob);
    CHECK(rep.applicable);
    CHECK(rep.verdict == CriterionVerdict::blowup_predicted);
    REQUIRE(rep.predicted_T.has_value());
    CHECK(*rep.predicted_T > 0.0);
    CHECK(rep.quantities.at("min_u0_prime") <
          rep.quantities.at("threshold"));
}

TEST_CASE("symmetry criterion") {
    auto g = make_grid(256, 2.0);
    RealField u0(g), rho0(g);
    for (int j = 0; j < g->N; ++j) {
        const double th = M_PI * g->nodes[j] / g->L;
        u0.v[j] = -std::sin(th);
        rho0.v[j] = 0.1 * (1.0 - std::cos(th));
    }
    const CriterionReport rep = criterion_thm52(u0, rho0, 1.0);
    CHECK(rep.applicable);
    CHECK(rep.verdict == CriterionVerdict::blowup_predicted);
    REQUIRE(rep.predicted_T.has_value());
    // u0'(0) = -pi/L, so T0 = L/pi
    CHECK(*rep.predicted_T == doctest::Approx(g->L / M_PI).epsilon(1e-9));
    CHECK(rep.quantities.at("T0") ==
          doctest::Approx(g->L / M_PI).epsilon(1e-9));

    // even velocity breaks the symmetry hypothesis
    RealField even(g);
    for (int j = 0; j < g->N; ++j)
        even.v[j] = std::cos(M_PI * g->nodes[j] / g->L);
    CHECK(!criterion_thm52(even, rho0, 1.0).applicable);

    // density must vanish at the origin
    RealField rho_bad(g);
    for (int j = 0; j < g->N; ++j)
        rho_bad.v[j] = std::cos(M_PI * g->nodes[j] / g->L);
    CHECK(!criterion_thm52(u0, rho_bad, 1.0).applicable);

    // negative coupling is outside the hypothesis
    CHECK(!criterion_thm52(u0, rho0, -1.0).applicable);

    // positive initial slope at the origin: applicable geometry, no breaking
    RealField pos(g);
    for (int j = 0; j < g->N; ++j)
        pos.v[j] = std::sin(M_PI * g->nodes[j] / g->L);
    const CriterionReport norep = criterion_thm52(pos, rho0, 1.0);
    CHECK(norep.verdict == CriterionVerdict::inconclusive);
}

TEST_CASE("pointwise check helpers") {
    auto g = make_grid(256, M_PI);
    State s = make_state(g);
    for (int j = 0; j < g->N; ++j) s.u.v[j] = -std::sin(g->nodes[j]);
    DiagnosticsSeries series;
    series.append(s);

    // at t = 0 the slope bound is saturated exactly
    CHECK(check_slope_bound(series, -1.0) <= 1e-9);

    // law holds exactly when the record is built to satisfy it
    DiagnosticsSeries law;
    for (int i = 0; i < 5; ++i) {
        DiagnosticsRecord r;
        r.t = 0.1 * i;
        r.m = -1.0;
        r.int_m = -0.1 * i;
        r.rho_at_xi_slope = 2.0 * std::exp(-3.0 * r.int_m);
        law.records.push_back(r);
    }
    CHECK(check_rho_slope_law(law, 2.0) <= 1e-12);
    law.records[3].rho_at_xi_slope *= 1.5;
    CHECK(check_rho_slope_law(law, 2.0) >= 0.4);

    // zero solution sits far below the a priori sup bound
    DiagnosticsSeries zs;
    State z = make_state(g, 1.0);
    zs.append(z);
    z.t = 0.5;
    zs.append(z);
    CHECK(check_linf_bound(zs, RealField(g), RealField(g), 1.0, 2.0) <= 0.0);
}
