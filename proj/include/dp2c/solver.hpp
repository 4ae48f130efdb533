#pragma once
// Time integration of the transport form
//   u_t + u u_x = P(D)(3/2 u^2 + c/2 rho^2)
//   rho_t + u rho_x = -2 u_x rho
// by RK4 with adaptive steps, plus the linear-transport iteration scheme
// used as an independent cross-check.

#include "dp2c/characteristics.hpp"
#include "dp2c/diagnostics.hpp"
#include "dp2c/state.hpp"

namespace dp2c {

enum class Termination { completed, blowup_detected, dt_underflow, nonfinite };

const char* termination_name(Termination t);

struct RunResult {
    State final_state;
    Termination termination = Termination::completed;
    DiagnosticsSeries series;
    // filled when a bundle is tracked alongside the fields
    std::vector<double> conservation_residuals;
};

struct RhsResult {
    RealField du;
    RealField drho;
};

RhsResult rhs(const State& s, const SolverConfig& cfg);

// consistency of the transport form with the momentum form
// m_t + 3 m u_x + m_x u + c rho rho_x = 0, m = u - u_xx
double m_residual(const State& s, const RhsResult& r);

State step_rk4(const State& s, double dt, const SolverConfig& cfg,
               CharacteristicBundle* bundle = nullptr);

struct DtChoice {
    double dt;
    bool underflow;
};

DtChoice adaptive_dt(const State& s, const SolverConfig& cfg);

struct SnapshotRequest {
    std::vector<double> times;
    std::vector<State> states; // filled by evolve
};

RunResult evolve(const State& s0, double t_max, const SolverConfig& cfg,
                 CharacteristicBundle* bundle = nullptr,
                 SnapshotRequest* snapshots = nullptr);

// iterates of the linearized scheme: iterate 0 is the zero state, iterate
// n+1 transports along the frozen velocity of iterate n with frequency-
// truncated initial data; all iterates share one fixed time step
std::vector<RunResult> picard_iterate(const State& z0, int n_iters,
                                      double t_max, const SolverConfig& cfg);

} // namespace dp2c
