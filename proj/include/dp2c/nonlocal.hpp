#pragma once
// Nonlocal operators realized exactly through Fourier symbols.

#include "dp2c/grid.hpp"

namespace dp2c {

// (lambda^2 - d^2/dx^2)^{-1} f, symbol 1/(lambda^2 + xi^2)
RealField helmholtz_solve(const RealField& f, double lambda);

// convolution with the kernel (1/2) e^{-|x|}, i.e. (1 - d^2/dx^2)^{-1} f
RealField green_convolve(const RealField& f);

// -d/dx (1 - d^2/dx^2)^{-1} f, symbol -i xi / (1 + xi^2)
RealField pd_apply(const RealField& f);

// periodic traveling wave a cosh(L - |x - a t|_per) / cosh(L);
// its L -> infinity limit is the peaked wave a e^{-|x - a t|}
RealField peakon_field(double a, double t, const GridPtr& grid);

} // namespace dp2c
