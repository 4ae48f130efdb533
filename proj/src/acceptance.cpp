#include "dp2c/acceptance.hpp"

#include "dp2c/besov.hpp"
#include "dp2c/io.hpp"
#include "dp2c/nonlocal.hpp"
#include "dp2c/scenario.hpp"
#include "dp2c/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

namespace dp2c {
namespace {

namespace fs = std::filesystem;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double pair_l2(const State& a, const State& b) {
    double su = 0.0, sr = 0.0;
    for (int j = 0; j < a.u.grid->N; ++j) {
        const double du = a.u.v[j] - b.u.v[j];
        const double dr = a.rho.v[j] - b.rho.v[j];
        su += du * du;
        sr += dr * dr;
    }
    return std::sqrt(a.u.grid->dx * (su + sr));
}

RealField random_band_limited(const GridPtr& g, std::mt19937& rng,
                              int max_mode) {
    std::normal_distribution<double> gauss(0.0, 1.0);
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

// ---- A1: pointwise density conservation along characteristics ----------
AcceptanceCheck check_a1(const fs::path& wd) {
    AcceptanceCheck c{"A1", false, ""};
    ScenarioSpec spec = registered_scenario("smooth_conservation");
    const double rho0_inf = 0.5; // 0.3 + 0.2
    const double tol = 1e-4 * rho0_inf;

    const RunOutcome hi = run_scenario(spec, wd / "a1_n1024");
    spec.N = 512;
    const RunOutcome lo = run_scenario(spec, wd / "a1_n512");

    auto max_res = [](const RunOutcome& oc) {
        double w = 0.0;
        for (double r : oc.result.conservation_residuals) w = std::max(w, r);
        return w;
    };
    const double r_hi = max_res(hi), r_lo = max_res(lo);
    const bool completed = hi.result.termination == Termination::completed &&
                           lo.result.termination == Termination::completed;
    const double ratio = r_hi > 0.0 ? r_lo / r_hi : 1e300;
    c.pass = completed && r_hi <= tol && ratio >= 8.0;
    c.detail = fmt("residual(N=1024)=%.3e (tol %.1e), refinement ratio %.1fx "
                   "(need >=8)", r_hi, tol, ratio);
    return c;
}

struct BreakingRuns {
    RunOutcome n1024;
    RunOutcome n2048;
    double u0_prime_0 = 0.0;
};

BreakingRuns run_breaking(const fs::path& wd) {
    BreakingRuns br;
    ScenarioSpec spec = registered_scenario("wave_breaking");
    br.n2048 = run_scenario(spec, wd / "a2_n2048");
    spec.N = 1024;
    br.n1024 = run_scenario(spec, wd / "a2_n1024");
    const State s0 = build_initial(spec);
    const RealField u0x = spectral_derivative(s0.u, 1);
    br.u0_prime_0 = u0x.v[spec.N / 2];
    return br;
}

// ---- A2: slope bound at the origin and stable breaking time ------------
AcceptanceCheck check_a2(const BreakingRuns& br) {
    AcceptanceCheck c{"A2", false, ""};
    const double up0 = br.u0_prime_0;
    const double t0 = -1.0 / up0;
    const double bound_hi =
        check_slope_bound(br.n2048.result.series, up0);
    const double bound_lo =
        check_slope_bound(br.n1024.result.series, up0);
    const double t_obs_hi = br.n2048.result.final_state.t;
    const double t_obs_lo = br.n1024.result.final_state.t;
    const bool both_blowup =
        br.n2048.result.termination == Termination::blowup_detected &&
        br.n1024.result.termination == Termination::blowup_detected;
    const double t_gap = std::fabs(t_obs_hi - t_obs_lo) / t_obs_hi;
    c.pass = both_blowup && bound_hi <= 1e-3 * std::fabs(up0) &&
             bound_lo <= 1e-3 * std::fabs(up0) && t_obs_hi <= t0 * 1.05 &&
             t_gap <= 0.02;
    c.detail = fmt("slope-bound excess %.2e (tol %.1e), T_obs=%.4f (T0=%.3f), "
                   "resolution gap %.2f%%",
                   bound_hi, 1e-3 * std::fabs(up0), t_obs_hi, t0,
                   100.0 * t_gap);
    return c;
}

// ---- A3: blow-up rate fit plus exact-law recovery -----------------------
AcceptanceCheck check_a3(const BreakingRuns& br) {
    AcceptanceCheck c{"A3", false, ""};
    const SolverConfig& cfg = registered_scenario("wave_breaking").solver;
    const auto fit = fit_rate(br.n2048.result.series, cfg);

    // synthetic exact-law series
    auto synth = [](double alpha, double T) {
        DiagnosticsSeries s;
        for (int i = 0; i < 60; ++i) {
            DiagnosticsRecord r;
            r.t = T - std::pow(10.0, -0.05 * i) * 0.099 * T - 1e-4;
            r.m = -alpha / (T - r.t);
            s.records.push_back(r);
        }
        return s;
    };
    SolverConfig synth_cfg;
    synth_cfg.slope_cap = 1e9;
    const auto f1 = fit_rate(synth(1.0, 2.0), synth_cfg);
    const auto f2 = fit_rate(synth(2.0, 2.0), synth_cfg);
    const bool synth_ok = f1 && f2 && std::fabs(f1->slope - 1.0) <= 1e-10 &&
                          std::fabs(f1->T_est - 2.0) <= 1e-10 &&
                          std::fabs(f2->slope - 0.5) <= 1e-10;
    const bool run_ok =
        fit && fit->slope >= 0.9 && fit->slope <= 1.1 && fit->r2 >= 0.99;
    c.pass = synth_ok && run_ok;
    if (fit)
        c.detail = fmt("fit slope=%.3f r2=%.5f over %d points; exact-law "
                       "recovery %s",
                       fit->slope, fit->r2, fit->n_points,
                       synth_ok ? "ok" : "FAILED");
    else
        c.detail = "rate fit unavailable (too few records in window)";
    return c;
}

// ---- A4: traveling-wave propagation --------------------------------------
AcceptanceCheck check_a4(const fs::path& wd) {
    AcceptanceCheck c{"A4", false, ""};
    const ScenarioSpec spec = registered_scenario("peakon");
    const RunOutcome oc = run_scenario(spec, wd / "a4_peakon");
    const State& fin = oc.result.final_state;

    // reference: the same smoothing applied to the translated profile
    RealField ref = peakon_field(spec.init.a, fin.t, fin.u.grid);
    ref = helmholtz_solve(ref, spec.init.lambda);
    for (double& v : ref.v) v *= spec.init.lambda * spec.init.lambda;

    double num = 0.0, den = 0.0;
    for (int j = 0; j < fin.u.grid->N; ++j) {
        const double d = fin.u.v[j] - ref.v[j];
        num += d * d;
        den += ref.v[j] * ref.v[j];
    }
    const double rel = std::sqrt(num / den);
    const double rho_max = linf_norm(fin.rho);
    c.pass = oc.result.termination == Termination::completed && rel <= 0.05 &&
             rho_max == 0.0;
    c.detail = fmt("relative L2 shape error %.4f (tol 0.05), max|rho|=%.1e",
                   rel, rho_max);
    return c;
}

// ---- A5: density-slope amplification law ---------------------------------
AcceptanceCheck check_a5(const fs::path& wd) {
    AcceptanceCheck c{"A5", false, ""};
    const ScenarioSpec spec = registered_scenario("density_gradient");
    const RunOutcome oc = run_scenario(spec, wd / "a5_density");
    const State s0 = build_initial(spec);
    const CriterionReport rep = criterion_thm52(s0.u, s0.rho, spec.c);
    if (!rep.applicable) {
        c.detail = "scenario unexpectedly outside the symmetry criterion";
        return c;
    }
    const double rp = rep.quantities.at("rho0_prime_x0");
    const double worst = check_rho_slope_law(oc.result.series, rp);

    // net growth across the window vs the exponential of the slope integral
    const auto& recs = oc.result.series.records;
    size_t last = 0;
    for (size_t i = 0; i < recs.size(); ++i)
        if (std::fabs(recs[i].m) <= kValidityCap) last = i;
    const double growth =
        std::fabs(recs[last].rho_at_xi_slope / recs[0].rho_at_xi_slope);
    const double target = std::exp(-3.0 * recs[last].int_m);
    const double growth_err = std::fabs(growth / target - 1.0);

    c.pass = oc.result.termination == Termination::blowup_detected &&
             std::fabs(rp) > 1e-6 && worst <= 0.05 && growth_err <= 0.10;
    c.detail = fmt("law error %.3f (tol 0.05), growth %.1fx vs %.1fx "
                   "(gap %.1f%%)",
                   worst, growth, target, 100.0 * growth_err);
    return c;
}

// ---- A6: operator exactness ----------------------------------------------
AcceptanceCheck check_a6(const fs::path&) {
    AcceptanceCheck c{"A6", false, ""};
    const GridPtr g = make_grid(256, M_PI);
    const double xi1 = M_PI / g->L;
    double worst_eig = 0.0;

    RealField sin1(g), cos1(g), four(g, 4.0);
    for (int j = 0; j < g->N; ++j) {
        sin1.v[j] = std::sin(xi1 * g->nodes[j]);
        cos1.v[j] = std::cos(xi1 * g->nodes[j]);
    }
    const RealField h1 = helmholtz_solve(sin1, 1.0);
    const RealField h2 = helmholtz_solve(four, 2.0);
    const RealField pd = pd_apply(cos1);
    for (int j = 0; j < g->N; ++j) {
        worst_eig = std::max(worst_eig,
                             std::fabs(h1.v[j] - sin1.v[j] / (1.0 + xi1 * xi1)));
        worst_eig = std::max(worst_eig, std::fabs(h2.v[j] - 1.0));
        worst_eig = std::max(
            worst_eig,
            std::fabs(pd.v[j] - xi1 / (1.0 + xi1 * xi1) * sin1.v[j]));
    }

    // quadrature cross-check of the kernel convolution; the trapezoid sum
    // only sees the kernel kink at O(dx^2), so the grid must be fine for
    // the sum itself to reach 1e-8 (spot-checked at 8 points)
    const GridPtr gq = make_grid(131072, M_PI);
    std::mt19937 rng(20240901);
    const RealField f = random_band_limited(gq, rng, 40);
    const RealField conv = green_convolve(f);
    double worst_quad = 0.0;
    const double norm = 1.0 / (2.0 * std::sinh(gq->L));
    for (int j = 0; j < gq->N; j += gq->N / 8) {
        double acc = 0.0;
        for (int i = 0; i < gq->N; ++i) {
            double d = std::fabs(gq->nodes[j] - gq->nodes[i]);
            d = std::fmin(d, 2.0 * gq->L - d);
            acc += std::cosh(gq->L - d) * f.v[i];
        }
        worst_quad = std::max(worst_quad,
                              std::fabs(conv.v[j] - acc * norm * gq->dx));
    }

    double mean = 0.0;
    const RealField fm = random_band_limited(g, rng, 40);
    const RealField pdf = pd_apply(fm);
    for (double v : pdf.v) mean += v;
    mean = std::fabs(mean / g->N);

    c.pass = worst_eig <= 1e-10 && worst_quad <= 1e-8 && mean <= 1e-14;
    c.detail = fmt("eigenfunction error %.1e, quadrature gap %.1e, "
                   "mean(P(D)f)=%.1e",
                   worst_eig, worst_quad, mean);
    return c;
}

// ---- A7: dyadic decomposition suite ---------------------------------------
AcceptanceCheck check_a7(const fs::path&) {
    AcceptanceCheck c{"A7", false, ""};
    const GridPtr g = make_grid(512, M_PI);
    const DyadicPartition part = build_partition(g);

    double sum_err = 0.0;
    for (int j = 0; j < g->N; ++j) {
        double s = part.chi[j];
        for (const auto& blk : part.phi_blocks) s += blk[j];
        sum_err = std::max(sum_err, std::fabs(s - 1.0));
    }

    std::mt19937 rng(77);
    double rec_err = 0.0, ortho = 0.0, ring_err = 0.0;
    double ratio_lo0 = 1e300, ratio_hi0 = 0.0, ratio_lo1 = 1e300,
           ratio_hi1 = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const RealField f = random_band_limited(g, rng, 40);
        RealField sum(g);
        std::vector<RealField> blocks;
        for (int q = -1; q <= part.Q_max; ++q) {
            blocks.push_back(lp_block(f, q, part));
            for (int j = 0; j < g->N; ++j) sum.v[j] += blocks.back().v[j];
        }
        for (int j = 0; j < g->N; ++j)
            rec_err = std::max(rec_err, std::fabs(sum.v[j] - f.v[j]));
        for (size_t p = 0; p < blocks.size(); ++p)
            for (size_t q = p + 2; q < blocks.size(); ++q) {
                double ip = 0.0;
                for (int j = 0; j < g->N; ++j)
                    ip += blocks[p].v[j] * blocks[q].v[j];
                ortho = std::max(ortho, std::fabs(ip * g->dx));
            }
        const double b0 = besov_norm(f, {0.0, 2.0, 2.0}, part);
        const double b1 = besov_norm(f, {1.0, 2.0, 2.0}, part);
        const double h0 = l2_norm(f), h1 = sobolev_norm(f, 1.0);
        ratio_lo0 = std::min(ratio_lo0, b0 / h0);
        ratio_hi0 = std::max(ratio_hi0, b0 / h0);
        ratio_lo1 = std::min(ratio_lo1, b1 / h1);
        ratio_hi1 = std::max(ratio_hi1, b1 / h1);
    }

    // single-ring localization: a mode strictly inside ring q
    {
        const int q = 3; // ring covers [6, 21.3]; pick xi = 11 in [4/3,3/2]*8
        RealField mode(g);
        for (int j = 0; j < g->N; ++j)
            mode.v[j] = std::sin(11.0 * g->nodes[j]);
        const RealField own = lp_block(mode, q, part);
        const RealField far = lp_block(mode, q + 2, part);
        for (int j = 0; j < g->N; ++j) {
            ring_err = std::max(ring_err, std::fabs(own.v[j] - mode.v[j]));
            ring_err = std::max(ring_err, std::fabs(far.v[j]));
        }
    }

    const bool ratios_ok = ratio_lo0 >= 0.5 && ratio_hi0 <= 2.0 &&
                           ratio_lo1 >= 0.5 && ratio_hi1 <= 2.0;
    c.pass = sum_err <= 1e-12 && rec_err <= 1e-10 && ortho <= 1e-12 &&
             ring_err <= 1e-10 && ratios_ok;
    c.detail = fmt("partition err %.1e, reconstruction %.1e, orthogonality "
                   "%.1e, ring %.1e, ratios [%.2f,%.2f] / [%.2f,%.2f]",
                   sum_err, rec_err, ortho, ring_err, ratio_lo0, ratio_hi0,
                   ratio_lo1, ratio_hi1);
    return c;
}

// ---- A8: linear-transport iteration vs nonlinear solver -------------------
AcceptanceCheck check_a8(const fs::path&) {
    AcceptanceCheck c{"A8", false, ""};
    const ScenarioSpec spec = registered_scenario("picard_small");
    const State z0 = build_initial(spec);
    const double t_max = spec.t_max;

    const auto iters = picard_iterate(z0, 8, t_max, spec.solver);
    State zero;
    zero.t = t_max;
    zero.c = z0.c;
    zero.u = RealField(z0.u.grid);
    zero.rho = RealField(z0.u.grid);
    std::vector<double> gaps;
    gaps.push_back(pair_l2(iters[0].final_state, zero));
    for (size_t i = 1; i < iters.size(); ++i)
        gaps.push_back(pair_l2(iters[i].final_state, iters[i - 1].final_state));
    bool monotone = true;
    double worst_ratio = 0.0;
    for (size_t i = 1; i < gaps.size(); ++i) {
        const double r = gaps[i] / gaps[i - 1];
        worst_ratio = std::max(worst_ratio, r);
        if (r > 0.7) monotone = false;
    }

    // nonlinear reference at the iteration's own fixed step, and its
    // self-convergence error from a halved step
    const double dt0 = adaptive_dt(z0, spec.solver).dt;
    const int n_steps =
        std::max(16, static_cast<int>(std::ceil(t_max / dt0)));
    auto run_fixed = [&](int n) {
        State s = z0;
        const double dt = t_max / n;
        for (int i = 0; i < n; ++i) s = step_rk4(s, dt, spec.solver);
        return s;
    };
    const State ref = run_fixed(n_steps);
    const State ref2 = run_fixed(2 * n_steps);
    const double self_err = pair_l2(ref, ref2);
    const double gap8 = pair_l2(iters.back().final_state, ref);

    c.pass = monotone && gap8 <= 10.0 * self_err;
    c.detail = fmt("max gap ratio %.3f (need <=0.7), iterate-8 gap %.2e vs "
                   "10x self-convergence %.2e",
                   worst_ratio, gap8, 10.0 * self_err);
    return c;
}

// ---- A9: linear-response stability of the flow map -------------------------
AcceptanceCheck check_a9(const fs::path&) {
    AcceptanceCheck c{"A9", false, ""};
    ScenarioSpec spec = registered_scenario("smooth_conservation");
    spec.diag.characteristics = false;
    const State base0 = build_initial(spec);
    const double t_probe = 0.5;
    const RunResult base = evolve(base0, t_probe, spec.solver);

    auto perturbed = [&](double size) {
        State s = base0;
        for (int j = 0; j < s.u.grid->N; ++j) {
            const double th = M_PI * s.u.grid->nodes[j] / s.u.grid->L;
            s.u.v[j] += size * std::sin(2.0 * th);
            s.rho.v[j] += size * std::cos(th);
        }
        return s;
    };
    auto h1l2 = [&](const State& a, const State& b) {
        RealField du(a.u.grid), dr(a.u.grid);
        for (int j = 0; j < a.u.grid->N; ++j) {
            du.v[j] = a.u.v[j] - b.u.v[j];
            dr.v[j] = a.rho.v[j] - b.rho.v[j];
        }
        const double nu = sobolev_norm(du, 1.0), nr = l2_norm(dr);
        return std::sqrt(nu * nu + nr * nr);
    };

    std::vector<double> ratios;
    for (double size : {1e-3, 1e-4, 1e-5}) {
        const State p0 = perturbed(size);
        const double d0 = h1l2(p0, base0);
        const RunResult pr = evolve(p0, t_probe, spec.solver);
        ratios.push_back(h1l2(pr.final_state, base.final_state) / d0);
    }
    const double lo = std::min({ratios[0], ratios[1], ratios[2]});
    const double hi = std::max({ratios[0], ratios[1], ratios[2]});
    c.pass = hi / lo <= 1.10;
    c.detail = fmt("amplification ratios %.4f / %.4f / %.4f (spread %.1f%%)",
                   ratios[0], ratios[1], ratios[2], 100.0 * (hi / lo - 1.0));
    return c;
}

// ---- A10: threshold criterion end-to-end ----------------------------------
AcceptanceCheck check_a10(const fs::path& wd) {
    AcceptanceCheck c{"A10", false, ""};
    const RunOutcome steep =
        run_scenario(registered_scenario("steep_threshold"), wd / "a10_steep");
    const RunOutcome shallow = run_scenario(
        registered_scenario("shallow_threshold"), wd / "a10_shallow");

    const auto& crit_s = steep.summary["criteria"]["threshold"];
    const auto& crit_h = shallow.summary["criteria"]["threshold"];
    const bool steep_fires = crit_s["verdict"] == "blowup_predicted";
    const double t_star = crit_s["quantities"]["T_star"].get<double>();
    const bool steep_confirms =
        steep.summary["termination"] == "blowup_detected" &&
        steep.result.final_state.t < t_star;

    double m_worst = 0.0;
    for (const auto& r : shallow.result.series.records)
        m_worst = std::min(m_worst, r.m);
    const bool shallow_ok = crit_h["verdict"] == "inconclusive" &&
                            shallow.summary["termination"] == "completed" &&
                            m_worst > -1.0;

    c.pass = steep_fires && steep_confirms && shallow_ok;
    c.detail = fmt("steep: predicted, T_obs=%.4f < T*=%.4f; shallow: "
                   "inconclusive, min m=%.3f over t<=%.1f",
                   steep.result.final_state.t, t_star, m_worst,
                   shallow.result.final_state.t);
    return c;
}

} // namespace

std::vector<AcceptanceCheck> run_acceptance(const fs::path& workdir) {
    fs::create_directories(workdir);
    std::vector<AcceptanceCheck> out;
    out.push_back(check_a1(workdir));
    const BreakingRuns br = run_breaking(workdir);
    out.push_back(check_a2(br));
    out.push_back(check_a3(br));
    out.push_back(check_a4(workdir));
    out.push_back(check_a5(workdir));
    out.push_back(check_a6(workdir));
    out.push_back(check_a7(workdir));
    out.push_back(check_a8(workdir));
    out.push_back(check_a9(workdir));
    out.push_back(check_a10(workdir));
    return out;
}

} // namespace dp2c
