#include "dp2c/diagnostics.hpp"

#include "dp2c/besov.hpp"
#include "dp2c/spline.hpp"

#include <algorithm>
#include <cmath>

namespace dp2c {
namespace {

double periodic_dist(double a, double b, double L) {
    double d = std::fabs(a - b);
    return std::fmin(d, 2.0 * L - d);
}

// grid argmin with tie-breaking toward a previous location (the minimizer
// of an odd-velocity profile comes in mirror pairs; without the tie-break
// the tracked location can hop between them)
int argmin_with_tiebreak(const std::vector<double>& v, const GridPtr& grid,
                         std::optional<double> prev_xi) {
    int best = 0;
    for (size_t j = 1; j < v.size(); ++j)
        if (v[j] < v[best]) best = static_cast<int>(j);
    const double tol = 1e-9 * std::max(1.0, std::fabs(v[best]));
    std::vector<int> cands;
    for (size_t j = 0; j < v.size(); ++j)
        if (v[j] <= v[best] + tol) cands.push_back(static_cast<int>(j));
    if (cands.size() <= 1) return best;
    const double target = prev_xi ? *prev_xi : 0.0;
    int pick = cands[0];
    double dbest = 1e300;
    for (int j : cands) {
        double d = periodic_dist(grid->nodes[j], target, grid->L);
        if (!prev_xi) d = -grid->nodes[j]; // no history: prefer largest x
        if (d < dbest) {
            dbest = d;
            pick = j;
        }
    }
    return pick;
}

struct LineFit {
    double a, b, r2;
};

LineFit least_squares(const std::vector<double>& t, const std::vector<double>& y) {
    const size_t n = t.size();
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = 0; i < n; ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double denom = n * stt - st * st;
    const double b = (n * sty - st * sy) / denom;
    const double a = (sy - b * st) / n;
    double ss_res = 0, ss_tot = 0;
    const double ym = sy / n;
    for (size_t i = 0; i < n; ++i) {
        const double e = y[i] - (a + b * t[i]);
        ss_res += e * e;
        ss_tot += (y[i] - ym) * (y[i] - ym);
    }
    return {a, b, ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
}

// J(t): explicit a priori bound on ||u||_inf built from the initial norms;
// the exponent budget ("2Mt") is passed in so the same formula serves both
// the fixed-M form and the running-integral form
double j_bound(double t, double c, double u0_l2_sq, double u0_inf,
               double rho0_sob, double two_mt) {
    const double ab = std::fabs(c);
    const double e2 = std::exp(two_mt);
    const double r4 = std::pow(e2 * rho0_sob, 4);
    const double r2 = std::pow(e2 * rho0_sob, 2);
    return 1.5 * t * std::exp(2.0 * ab * t) *
               (2.0 * u0_l2_sq + ab * t * (1.0 + 4.0 * two_mt) * r4 +
                0.25 * ab * r2) +
           u0_inf;
}

} // namespace

DiagnosticsRecord record(const State& s, std::optional<double> prev_xi) {
    DiagnosticsRecord r;
    r.t = s.t;
    const GridPtr& g = s.u.grid;
    const RealField ux = spectral_derivative(s.u, 1);
    const RealField rx = spectral_derivative(s.rho, 1);

    const int jmin = argmin_with_tiebreak(ux.v, g, prev_xi);
    double m = ux.v[jmin];
    double xi = g->nodes[jmin];
    PeriodicSpline sx(ux);
    const double d1 = sx.deriv(xi), d2 = sx.deriv2(xi);
    if (d2 > 0.0) {
        const double step = -d1 / d2;
        if (std::fabs(step) <= g->dx) {
            const double cand = xi + step;
            const double mc = sx.eval(cand);
            if (mc < m) {
                m = mc;
                xi = cand;
            }
        }
    }
    r.m = m;
    r.xi = xi;
    r.u_x_at_0 = ux.v[g->N / 2]; // x = 0 is a node
    r.rho_x_max = *std::max_element(rx.v.begin(), rx.v.end());
    r.rho_x_min = *std::min_element(rx.v.begin(), rx.v.end());
    r.u_inf = linf_norm(s.u);
    r.u_l2 = l2_norm(s.u);
    r.rho_inf = linf_norm(s.rho);
    r.rho_l2 = l2_norm(s.rho);
    PeriodicSpline srx(rx);
    r.rho_at_xi_slope = srx.eval(xi);
    r.int_m = 0.0; // accumulated by the series
    r.ux_inf = linf_norm(ux);
    return r;
}

void DiagnosticsSeries::append(const State& s) {
    std::optional<double> prev_xi;
    if (!records.empty()) prev_xi = records.back().xi;
    DiagnosticsRecord r = record(s, prev_xi);
    if (!records.empty()) {
        const DiagnosticsRecord& p = records.back();
        if (!(r.t > p.t)) throw std::invalid_argument("time must increase");
        r.int_m = p.int_m + 0.5 * (r.m + p.m) * (r.t - p.t);
    }
    records.push_back(r);
}

ClassifyResult classify(const DiagnosticsSeries& series, const SolverConfig& cfg) {
    if (series.records.empty())
        throw std::invalid_argument("empty diagnostics series");
    const auto& recs = series.records;
    double v_int = 0.0;
    for (size_t i = 1; i < recs.size(); ++i)
        v_int += 0.5 * (recs[i].ux_inf + recs[i - 1].ux_inf) *
                 (recs[i].t - recs[i - 1].t);

    bool blow = recs.back().m <= -cfg.slope_cap;
    if (blow && recs.size() >= 2) {
        const size_t start = recs.size() > 10 ? recs.size() - 10 : 0;
        for (size_t i = start; i + 1 < recs.size(); ++i) {
            // small upticks from grid re-sampling of the minimum are allowed
            if (recs[i + 1].m > recs[i].m + 0.05 * std::fabs(recs[i].m)) {
                blow = false;
                break;
            }
        }
    }
    return {blow ? Verdict::blowup : Verdict::global_so_far, v_int};
}

std::optional<RateFit> fit_rate(const DiagnosticsSeries& series,
                                const SolverConfig& cfg) {
    std::vector<double> t, y;
    for (const auto& r : series.records)
        if (r.m <= -10.0 && r.m >= -1.05 * cfg.slope_cap) {
            t.push_back(r.t);
            y.push_back(-1.0 / r.m);
        }
    if (t.size() < 20) return std::nullopt;
    const LineFit f = least_squares(t, y);
    RateFit out;
    out.slope = -f.b;            // unit slope means the -1/(T-t) law
    out.T_est = -f.a / f.b;
    out.r2 = f.r2;
    out.n_points = static_cast<int>(t.size());
    return out;
}

CriterionReport criterion_thm51(const RealField& u0, const RealField& rho0,
                                double c, double eps, double M, double s_sob) {
    if (!(eps > 0.0) || !(M > 0.0) || !(s_sob > 1.5))
        throw std::invalid_argument("invalid criterion parameters");
    CriterionReport rep;
    rep.name = "threshold_criterion";
    rep.applicable = true;

    const double rho_sob = sobolev_norm(rho0, s_sob - 1.0);
    const double t_star = std::log(1.0 + 2.0 / eps) /
                          (std::sqrt(std::fabs(c) + 1.0) * (rho_sob + 1.0));
    const double u0_l2 = l2_norm(u0);
    const double u0_inf = linf_norm(u0);
    const double J = j_bound(t_star, c, u0_l2 * u0_l2, u0_inf, rho_sob,
                             2.0 * M * t_star);
    const double K = std::sqrt(
        0.75 * (std::fabs(c) + 1.0) *
            std::pow(std::exp(2.0 * M * t_star) * (rho_sob + 1.0), 2) +
        1.5 * J * J);

    const RealField u0x = spectral_derivative(u0, 1);
    double min_slope = u0x.v[0];
    for (double v : u0x.v) min_slope = std::min(min_slope, v);

    rep.quantities["T_star"] = t_star;
    rep.quantities["J"] = J;
    rep.quantities["K"] = K;
    rep.quantities["M_used"] = M;
    rep.quantities["eps"] = eps;
    rep.quantities["rho0_sobolev"] = rho_sob;
    rep.quantities["min_u0_prime"] = min_slope;
    rep.quantities["threshold"] = -(1.0 + eps) * K;
    rep.verdict = min_slope < -(1.0 + eps) * K
                      ? CriterionVerdict::blowup_predicted
                      : CriterionVerdict::inconclusive;
    if (rep.verdict == CriterionVerdict::blowup_predicted)
        rep.predicted_T = t_star;
    return rep;
}

CriterionReport criterion_thm52(const RealField& u0, const RealField& rho0,
                                double c) {
    CriterionReport rep;
    rep.name = "symmetry_criterion";
    const GridPtr& g = u0.grid;
    const int N = g->N;

    double odd_defect = 0.0, even_defect = 0.0;
    for (int j = 1; j < N; ++j) {
        odd_defect = std::max(odd_defect, std::fabs(u0.v[j] + u0.v[N - j]));
        even_defect = std::max(even_defect, std::fabs(rho0.v[j] - rho0.v[N - j]));
    }
    odd_defect = std::max(odd_defect, std::fabs(u0.v[0])); // x=-L is self-paired
    const RealField u0x = spectral_derivative(u0, 1);
    const double up0 = u0x.v[N / 2];
    const double rho_at_0 = rho0.v[N / 2];

    rep.applicable = c >= 0.0 && odd_defect <= 1e-10 && even_defect <= 1e-10 &&
                     up0 < 0.0 && std::fabs(rho_at_0) <= 1e-12;
    rep.quantities["u0_prime_0"] = up0;
    rep.quantities["odd_defect"] = odd_defect;
    rep.quantities["even_defect"] = even_defect;

    if (rep.applicable) {
        rep.predicted_T = -1.0 / up0;
        rep.quantities["T0"] = *rep.predicted_T;
        // locate the slope minimizer (choose the nonnegative one of a
        // mirror pair) and report the initial density slope there
        int jmin = 0;
        for (int j = 0; j < N; ++j)
            if (u0x.v[j] < u0x.v[jmin] - 1e-15 ||
                (u0x.v[j] <= u0x.v[jmin] + 1e-12 * std::fabs(u0x.v[jmin]) &&
                 g->nodes[j] >= 0.0 && g->nodes[jmin] < 0.0))
                jmin = j;
        double x0 = g->nodes[jmin];
        PeriodicSpline sx(u0x);
        const double d1 = sx.deriv(x0), d2 = sx.deriv2(x0);
        if (d2 > 0.0 && std::fabs(d1 / d2) <= g->dx) x0 -= d1 / d2;
        const RealField r0x = spectral_derivative(rho0, 1);
        PeriodicSpline srx(r0x);
        rep.quantities["x0"] = x0;
        rep.quantities["rho0_prime_x0"] = srx.eval(x0);
        rep.verdict = CriterionVerdict::blowup_predicted;
    }
    return rep;
}

double check_slope_bound(const DiagnosticsSeries& series, double u0_prime_0) {
    double worst = -1e300;
    for (const auto& r : series.records) {
        if (std::fabs(r.m) > kValidityCap) break;
        const double denom = 1.0 + r.t * u0_prime_0;
        if (denom <= 0.0) break;
        worst = std::max(worst, r.u_x_at_0 - u0_prime_0 / denom);
    }
    return worst;
}

double check_rho_slope_law(const DiagnosticsSeries& series,
                           double rho0_prime_x0) {
    double worst = 0.0;
    for (const auto& r : series.records) {
        if (std::fabs(r.m) > kValidityCap) break;
        const double ref = rho0_prime_x0 * std::exp(-3.0 * r.int_m);
        if (std::fabs(ref) < 1e-14) {
            worst = std::max(worst, std::fabs(r.rho_at_xi_slope));
            continue;
        }
        worst = std::max(worst, std::fabs(r.rho_at_xi_slope - ref) / std::fabs(ref));
    }
    return worst;
}

double check_linf_bound(const DiagnosticsSeries& series, const RealField& u0,
                        const RealField& rho0, double c, double s_sob) {
    const double u0_l2 = l2_norm(u0);
    const double u0_inf = linf_norm(u0);
    const double rho_sob = sobolev_norm(rho0, s_sob - 1.0);
    double worst = -1e300;
    double v_int = 0.0;
    const auto& recs = series.records;
    for (size_t i = 0; i < recs.size(); ++i) {
        if (i > 0)
            v_int += 0.5 * (recs[i].ux_inf + recs[i - 1].ux_inf) *
                     (recs[i].t - recs[i - 1].t);
        const double L_t = j_bound(recs[i].t, c, u0_l2 * u0_l2, u0_inf,
                                   rho_sob, 2.0 * v_int);
        worst = std::max(worst, recs[i].u_inf - L_t);
    }
    return worst;
}

} // namespace dp2c
