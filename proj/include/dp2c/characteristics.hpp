#pragma once
// Lagrangian markers following q_t = u(t, q), with the accumulated flow
// divergence giving the Jacobian q_x = exp(int u_x) and the pointwise
// invariant rho(t, q) q_x^2 = rho_0.

#include "dp2c/state.hpp"

namespace dp2c {

struct CharacteristicBundle {
    std::vector<double> labels;                 // initial positions
    std::vector<double> positions;              // q(t, x_i), wrapped
    std::vector<double> accumulated_divergence; // int_0^t u_x(s, q) ds
    std::vector<double> rho0;                   // rho_0(x_i)
    double t = 0.0;
};

CharacteristicBundle seed_bundle(const GridPtr& grid, int M,
                                 const RealField& rho0);

enum class InterpMode { spline, trigonometric };

std::vector<double> interpolate(const RealField& f,
                                const std::vector<double>& points,
                                InterpMode mode = InterpMode::spline);

// RK4 update of positions through a velocity field frozen over the step
CharacteristicBundle advance_bundle(const CharacteristicBundle& b,
                                    const RealField& u, const RealField& u_x,
                                    double dt);

std::vector<double> jacobian(const CharacteristicBundle& b);

// max_i | rho(t, q_i) q_x(q_i)^2 - rho0_i |
double conservation_residual(const State& s, const CharacteristicBundle& b);

} // namespace dp2c
