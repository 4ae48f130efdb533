#pragma once
// Per-step diagnostics: slope minimum m(t) = inf_x u_x and its location,
// norms, density-slope tracking, blow-up classification and rate fitting,
// and the explicit breaking criteria / a priori bounds.

#include "dp2c/state.hpp"

#include <map>
#include <optional>
#include <string>

namespace dp2c {

struct DiagnosticsRecord {
    double t = 0.0;
    double m = 0.0;              // min over x of u_x
    double xi = 0.0;             // argmin location (Newton-refined)
    double u_x_at_0 = 0.0;
    double rho_x_max = 0.0;
    double rho_x_min = 0.0;
    double u_inf = 0.0;
    double u_l2 = 0.0;
    double rho_inf = 0.0;
    double rho_l2 = 0.0;
    double rho_at_xi_slope = 0.0; // rho_x(t, xi(t)), interpolated
    double int_m = 0.0;           // trapezoid of m over time
    double ux_inf = 0.0;          // max |u_x|, not serialized
};

struct DiagnosticsSeries {
    std::vector<DiagnosticsRecord> records;
    void append(const State& s);
};

// standalone record; prev_xi breaks ties between degenerate minima
DiagnosticsRecord record(const State& s,
                         std::optional<double> prev_xi = std::nullopt);

enum class Verdict { global_so_far, blowup };

struct ClassifyResult {
    Verdict verdict;
    double int_ux_inf; // running integral of max|u_x| (secondary indicator)
};

ClassifyResult classify(const DiagnosticsSeries& series, const SolverConfig& cfg);

struct RateFit {
    double T_est;
    double slope;
    double r2;
    int n_points;
};

// least-squares line through (t, -1/m) over the window m in [-slope_cap, -10];
// empty when fewer than 20 records qualify
std::optional<RateFit> fit_rate(const DiagnosticsSeries& series,
                                const SolverConfig& cfg);

enum class CriterionVerdict { blowup_predicted, inconclusive };

struct CriterionReport {
    std::string name;
    bool applicable = false;
    std::optional<double> predicted_T;
    std::map<std::string, double> quantities;
    CriterionVerdict verdict = CriterionVerdict::inconclusive;
};

// threshold criterion: breaking is predicted before T* when the initial
// slope dips below -(1+eps) K(T*); M is the assumed lower-bound constant
CriterionReport criterion_thm51(const RealField& u0, const RealField& rho0,
                                double c, double eps, double M, double s_sob);

// odd/even symmetry criterion with T0 = -1/u0'(0)
CriterionReport criterion_thm52(const RealField& u0, const RealField& rho0,
                                double c);

// max over valid records of u_x(t,0) - u0'(0)/(1 + t u0'(0))
double check_slope_bound(const DiagnosticsSeries& series, double u0_prime_0);

// max relative error of rho_x(t,xi(t)) against rho0'(x0) exp(-3 int_m)
double check_rho_slope_law(const DiagnosticsSeries& series,
                           double rho0_prime_x0);

// max over records of u_inf - L(t), where L(t) is the a priori bound
// built from the running integral of max|u_x|
double check_linf_bound(const DiagnosticsSeries& series, const RealField& u0,
                        const RealField& rho0, double c, double s_sob);

// records with |m| beyond this are excluded from pointwise pass/fail checks
constexpr double kValidityCap = 100.0;

} // namespace dp2c
