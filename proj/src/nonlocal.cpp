#include "dp2c/nonlocal.hpp"

#include <cmath>

namespace dp2c {

RealField helmholtz_solve(const RealField& f, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    Spectrum F = to_spectrum(f);
    const double l2 = lambda * lambda;
    for (int j = 0; j < f.grid->N; ++j) {
        const double xi = f.grid->xi[j];
        F.c[j] /= l2 + xi * xi;
    }
    return from_spectrum(F);
}

RealField green_convolve(const RealField& f) { return helmholtz_solve(f, 1.0); }

RealField pd_apply(const RealField& f) {
    const int N = f.grid->N;
    Spectrum F = to_spectrum(f);
    for (int j = 0; j < N; ++j) {
        const double xi = f.grid->xi[j];
        F.c[j] *= std::complex<double>(0.0, -xi) / (1.0 + xi * xi);
    }
    F.c[N / 2] = 0.0; // odd symbol, unpaired Nyquist mode
    return from_spectrum(F);
}

RealField peakon_field(double a, double t, const GridPtr& grid) {
    const double L = grid->L;
    const double center = a * t;
    if (std::fabs(center) >= L)
        throw std::invalid_argument("peak outside the periodic window");
    RealField f(grid);
    for (int j = 0; j < grid->N; ++j) {
        double d = std::fabs(grid->nodes[j] - center);
        d = std::fmin(d, 2.0 * L - d); // periodic distance
        f.v[j] = a * std::cosh(L - d) / std::cosh(L);
    }
    return f;
}

} // namespace dp2c
