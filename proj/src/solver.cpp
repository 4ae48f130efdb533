#include "dp2c/solver.hpp"

#include "dp2c/besov.hpp"
#include "dp2c/nonlocal.hpp"
#include "dp2c/spline.hpp"

#include <cmath>

namespace dp2c {
namespace {

Spectrum deriv_spec(const Spectrum& F) {
    Spectrum G = F;
    const int N = F.grid->N;
    for (int j = 0; j < N; ++j)
        G.c[j] *= std::complex<double>(0.0, F.grid->xi[j]);
    G.c[N / 2] = 0.0;
    return G;
}

RealField mul(const RealField& a, const RealField& b) {
    RealField out(a.grid);
    for (int j = 0; j < a.grid->N; ++j) out.v[j] = a.v[j] * b.v[j];
    return out;
}

RealField dealias_product(const RealField& p, bool on) {
    if (!on) return p;
    return from_spectrum(dealias(to_spectrum(p)));
}

// dealias then apply the smoothing-derivative symbol in one pass
RealField pd_dealiased(const RealField& p, bool on) {
    Spectrum F = to_spectrum(p);
    if (on) F = dealias(F);
    const int N = F.grid->N;
    for (int j = 0; j < N; ++j) {
        const double xi = F.grid->xi[j];
        F.c[j] *= std::complex<double>(0.0, -xi) / (1.0 + xi * xi);
    }
    F.c[N / 2] = 0.0;
    return from_spectrum(F);
}

void apply_filter(State& s, const SolverConfig& cfg) {
    if (cfg.filter_p <= 0) return;
    const int N = s.u.grid->N;
    const double xi_max = M_PI * (N / 2) / s.u.grid->L;
    auto damp = [&](RealField& f) {
        Spectrum F = to_spectrum(f);
        for (int j = 0; j < N; ++j) {
            const double r = std::fabs(F.grid->xi[j]) / xi_max;
            F.c[j] *= std::exp(-36.0 * std::pow(r, 2.0 * cfg.filter_p));
        }
        f = from_spectrum(F);
    };
    damp(s.u);
    damp(s.rho);
}

State axpy(const State& s, double a, const RhsResult& k) {
    State out = s;
    for (int j = 0; j < s.u.grid->N; ++j) {
        out.u.v[j] += a * k.du.v[j];
        out.rho.v[j] += a * k.drho.v[j];
    }
    out.t = s.t + a;
    return out;
}

} // namespace

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::blowup_detected: return "blowup_detected";
        case Termination::dt_underflow: return "dt_underflow";
        case Termination::nonfinite: return "nonfinite";
    }
    return "unknown";
}

RhsResult rhs(const State& s, const SolverConfig& cfg) {
    if (!all_finite(s.u) || !all_finite(s.rho))
        throw std::domain_error("nonfinite state");
    const Spectrum uh = to_spectrum(s.u);
    const Spectrum rh = to_spectrum(s.rho);
    const RealField ux = from_spectrum(deriv_spec(uh));
    const RealField rx = from_spectrum(deriv_spec(rh));

    RealField quad(s.u.grid);
    for (int j = 0; j < s.u.grid->N; ++j)
        quad.v[j] = 1.5 * s.u.v[j] * s.u.v[j] + 0.5 * s.c * s.rho.v[j] * s.rho.v[j];

    RhsResult out;
    out.du = pd_dealiased(quad, cfg.dealias_on);
    const RealField uux = dealias_product(mul(s.u, ux), cfg.dealias_on);
    const RealField urx = dealias_product(mul(s.u, rx), cfg.dealias_on);
    const RealField uxr = dealias_product(mul(ux, s.rho), cfg.dealias_on);
    out.drho = RealField(s.u.grid);
    for (int j = 0; j < s.u.grid->N; ++j) {
        out.du.v[j] -= uux.v[j];
        out.drho.v[j] = -urx.v[j] - 2.0 * uxr.v[j];
    }
    return out;
}

double m_residual(const State& s, const RhsResult& r) {
    const auto d2 = [](const RealField& f) { return spectral_derivative(f, 2); };
    const RealField uxx = d2(s.u);
    const RealField dtm_part = d2(r.du);
    const RealField ux = spectral_derivative(s.u, 1);
    const RealField rx = spectral_derivative(s.rho, 1);
    RealField m(s.u.grid);
    for (int j = 0; j < s.u.grid->N; ++j) m.v[j] = s.u.v[j] - uxx.v[j];
    const RealField mx = spectral_derivative(m, 1);
    double worst = 0.0;
    for (int j = 0; j < s.u.grid->N; ++j) {
        const double dtm = r.du.v[j] - dtm_part.v[j];
        const double res = dtm + 3.0 * m.v[j] * ux.v[j] + mx.v[j] * s.u.v[j] +
                           s.c * s.rho.v[j] * rx.v[j];
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

State step_rk4(const State& s, double dt, const SolverConfig& cfg,
               CharacteristicBundle* bundle) {
    const RhsResult k1 = rhs(s, cfg);
    const State s2 = axpy(s, 0.5 * dt, k1);
    const RhsResult k2 = rhs(s2, cfg);
    const State s3 = axpy(s, 0.5 * dt, k2);
    const RhsResult k3 = rhs(s3, cfg);
    const State s4 = axpy(s, dt, k3);
    const RhsResult k4 = rhs(s4, cfg);

    State out = s;
    out.t = s.t + dt;
    for (int j = 0; j < s.u.grid->N; ++j) {
        out.u.v[j] += dt / 6.0 * (k1.du.v[j] + 2.0 * k2.du.v[j] +
                                  2.0 * k3.du.v[j] + k4.du.v[j]);
        out.rho.v[j] += dt / 6.0 * (k1.drho.v[j] + 2.0 * k2.drho.v[j] +
                                    2.0 * k3.drho.v[j] + k4.drho.v[j]);
    }
    apply_filter(out, cfg);

    if (bundle) {
        // markers move through the matching stage velocities
        PeriodicSpline su1(s.u), su2(s2.u), su3(s3.u), su4(s4.u);
        PeriodicSpline sx1(spectral_derivative(s.u, 1)),
            sx2(spectral_derivative(s2.u, 1)),
            sx3(spectral_derivative(s3.u, 1)),
            sx4(spectral_derivative(s4.u, 1));
        const double L = s.u.grid->L;
        for (size_t i = 0; i < bundle->positions.size(); ++i) {
            const double q = bundle->positions[i];
            const double c1 = su1.eval(q);
            const double c2 = su2.eval(q + 0.5 * dt * c1);
            const double c3 = su3.eval(q + 0.5 * dt * c2);
            const double c4 = su4.eval(q + dt * c3);
            const double g1 = sx1.eval(q);
            const double g2 = sx2.eval(q + 0.5 * dt * c1);
            const double g3 = sx3.eval(q + 0.5 * dt * c2);
            const double g4 = sx4.eval(q + dt * c3);
            double qn = q + dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
            double t = std::fmod(qn + L, 2.0 * L);
            if (t < 0.0) t += 2.0 * L;
            bundle->positions[i] = t - L;
            bundle->accumulated_divergence[i] +=
                dt / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
        }
        bundle->t = out.t;
    }
    return out;
}

DtChoice adaptive_dt(const State& s, const SolverConfig& cfg) {
    const RealField ux = spectral_derivative(s.u, 1);
    double m = ux.v[0];
    for (double v : ux.v) m = std::min(m, v);
    const double adv = s.u.grid->dx / (linf_norm(s.u) + 1e-12);
    const double slope = 1.0 / (10.0 * (std::fabs(m) + 1.0));
    double dt = cfg.cfl * std::min(adv, slope);
    if (dt < cfg.dt_min) return {cfg.dt_min, true};
    return {dt, false};
}

RunResult evolve(const State& s0, double t_max, const SolverConfig& cfg,
                 CharacteristicBundle* bundle, SnapshotRequest* snapshots) {
    if (!(t_max > s0.t)) throw std::invalid_argument("t_max must exceed s0.t");
    RunResult res;
    State s = s0;
    size_t snap_idx = 0;
    while (true) {
        if (!all_finite(s.u) || !all_finite(s.rho)) {
            res.termination = Termination::nonfinite;
            break;
        }
        res.series.append(s);
        if (bundle)
            res.conservation_residuals.push_back(conservation_residual(s, *bundle));
        if (snapshots) {
            while (snap_idx < snapshots->times.size() &&
                   s.t >= snapshots->times[snap_idx] - 1e-12) {
                snapshots->states.push_back(s);
                ++snap_idx;
            }
        }
        const double m = res.series.records.back().m;
        if (m <= -cfg.slope_cap) {
            res.termination = Termination::blowup_detected;
            break;
        }
        if (s.t >= t_max - 1e-14) {
            res.termination = Termination::completed;
            break;
        }
        const DtChoice ch = adaptive_dt(s, cfg);
        if (ch.underflow) {
            res.termination = Termination::dt_underflow;
            break;
        }
        const double dt = std::min(ch.dt, t_max - s.t);
        s = step_rk4(s, dt, cfg, bundle);
    }
    res.final_state = s;
    return res;
}

std::vector<RunResult> picard_iterate(const State& z0, int n_iters,
                                      double t_max, const SolverConfig& cfg) {
    if (n_iters < 1 || n_iters > 10)
        throw std::invalid_argument("n_iters must be in [1, 10]");
    const GridPtr grid = z0.u.grid;
    const DyadicPartition part = build_partition(grid);

    const double dt0 = adaptive_dt(z0, cfg).dt;
    const int n_steps = std::max(16, static_cast<int>(std::ceil(t_max / dt0)));
    const double dt = t_max / n_steps;

    // previous-iterate history at full steps; midpoint stage values come
    // from 4-point polynomial interpolation in time (matches RK4 order)
    std::vector<State> prev(n_steps + 1);
    for (int j = 0; j <= n_steps; ++j) {
        prev[j].t = j * dt;
        prev[j].u = RealField(grid);
        prev[j].rho = RealField(grid);
        prev[j].c = z0.c;
    }

    auto frozen_mid = [&](const std::vector<State>& h, int j) {
        // interpolate at j + 1/2 from a 4-point stencil
        int base = std::min(std::max(j - 1, 0), n_steps - 3);
        const double x = (j + 0.5) - base;
        double w[4];
        for (int a = 0; a < 4; ++a) {
            w[a] = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) w[a] *= (x - b) / (a - b);
        }
        State out;
        out.t = (j + 0.5) * dt;
        out.c = z0.c;
        out.u = RealField(grid);
        out.rho = RealField(grid);
        for (int n = 0; n < grid->N; ++n) {
            double su = 0.0, sr = 0.0;
            for (int a = 0; a < 4; ++a) {
                su += w[a] * h[base + a].u.v[n];
                sr += w[a] * h[base + a].rho.v[n];
            }
            out.u.v[n] = su;
            out.rho.v[n] = sr;
        }
        return out;
    };

    // linear transport with fully frozen velocity and sources
    auto lin_rhs = [&](const RealField& u, const RealField& rho,
                       const State& f) {
        RhsResult out;
        const RealField ux = spectral_derivative(u, 1);
        const RealField rx = spectral_derivative(rho, 1);
        const RealField fux = spectral_derivative(f.u, 1);
        RealField quad(grid), fu_ux(grid), fu_rx(grid), frho_fux(grid);
        for (int n = 0; n < grid->N; ++n) {
            quad.v[n] = 1.5 * f.u.v[n] * f.u.v[n] +
                        0.5 * z0.c * f.rho.v[n] * f.rho.v[n];
            fu_ux.v[n] = f.u.v[n] * ux.v[n];
            fu_rx.v[n] = f.u.v[n] * rx.v[n];
            frho_fux.v[n] = f.rho.v[n] * fux.v[n];
        }
        out.du = pd_dealiased(quad, cfg.dealias_on);
        const RealField a = dealias_product(fu_ux, cfg.dealias_on);
        const RealField b = dealias_product(fu_rx, cfg.dealias_on);
        const RealField d = dealias_product(frho_fux, cfg.dealias_on);
        out.drho = RealField(grid);
        for (int n = 0; n < grid->N; ++n) {
            out.du.v[n] -= a.v[n];
            out.drho.v[n] = -b.v[n] - 2.0 * d.v[n];
        }
        return out;
    };

    std::vector<RunResult> iterates;
    for (int iter = 1; iter <= n_iters; ++iter) {
        std::vector<State> cur(n_steps + 1);
        State s;
        s.t = 0.0;
        s.c = z0.c;
        s.u = low_freq(z0.u, iter, part);
        s.rho = low_freq(z0.rho, iter, part);
        RunResult rr;
        cur[0] = s;
        rr.series.append(s);
        for (int j = 0; j < n_steps; ++j) {
            const State& f0 = prev[j];
            const State fm = frozen_mid(prev, j);
            const State& f1 = prev[j + 1];
            const RhsResult k1 = lin_rhs(s.u, s.rho, f0);
            State s2 = axpy(s, 0.5 * dt, k1);
            const RhsResult k2 = lin_rhs(s2.u, s2.rho, fm);
            State s3 = axpy(s, 0.5 * dt, k2);
            const RhsResult k3 = lin_rhs(s3.u, s3.rho, fm);
            State s4 = axpy(s, dt, k3);
            const RhsResult k4 = lin_rhs(s4.u, s4.rho, f1);
            for (int n = 0; n < grid->N; ++n) {
                s.u.v[n] += dt / 6.0 * (k1.du.v[n] + 2.0 * k2.du.v[n] +
                                        2.0 * k3.du.v[n] + k4.du.v[n]);
                s.rho.v[n] += dt / 6.0 * (k1.drho.v[n] + 2.0 * k2.drho.v[n] +
                                          2.0 * k3.drho.v[n] + k4.drho.v[n]);
            }
            s.t = (j + 1) * dt;
            apply_filter(s, cfg);
            cur[j + 1] = s;
            rr.series.append(s);
        }
        rr.final_state = s;
        rr.termination = Termination::completed;
        iterates.push_back(std::move(rr));
        prev = std::move(cur);
    }
    return iterates;
}

} // namespace dp2c
