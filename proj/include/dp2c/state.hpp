#pragma once

#include "dp2c/grid.hpp"

namespace dp2c {

// the evolved pair (u, rho) at time t with coupling constant c
struct State {
    double t = 0.0;
    RealField u;
    RealField rho;
    double c = 0.0;
};

struct SolverConfig {
    double cfl = 0.5;
    double dt_min = 1e-10;
    double slope_cap = 1e4;
    bool dealias_on = true;
    int filter_p = 0; // exponential filter order, 0 = off
};

} // namespace dp2c
