#include "dp2c/grid.hpp"

#include "dp2c/fft.hpp"

#include <cmath>

namespace dp2c {

GridPtr make_grid(int N, double L) {
    if (N < 16 || (N & (N - 1)) != 0)
        throw std::invalid_argument("N must be a power of two >= 16");
    if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
    auto g = std::make_shared<Grid>();
    g->N = N;
    g->L = L;
    g->dx = 2.0 * L / N;
    g->nodes.resize(N);
    g->xi.resize(N);
    const double pi_over_L = M_PI / L;
    for (int j = 0; j < N; ++j) {
        g->nodes[j] = -L + j * g->dx;
        g->xi[j] = pi_over_L * k_of_index(j, N);
    }
    return g;
}

Spectrum to_spectrum(const RealField& f) {
    const int N = f.grid->N;
    Spectrum F(f.grid);
    for (int j = 0; j < N; ++j) F.c[j] = f.v[j];
    fft::forward(F.c);
    const double inv_n = 1.0 / N;
    for (int j = 0; j < N; ++j) {
        const double sign = (k_of_index(j, N) & 1) ? -1.0 : 1.0;
        F.c[j] *= sign * inv_n;
    }
    return F;
}

RealField from_spectrum(const Spectrum& F) {
    const int N = F.grid->N;
    std::vector<std::complex<double>> buf(N);
    for (int j = 0; j < N; ++j) {
        const double sign = (k_of_index(j, N) & 1) ? -1.0 : 1.0;
        buf[j] = sign * F.c[j];
    }
    fft::backward(buf);
    RealField f(F.grid);
    for (int j = 0; j < N; ++j) f.v[j] = buf[j].real();
    return f;
}

RealField spectral_derivative(const RealField& f, int order) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    const int N = f.grid->N;
    Spectrum F = to_spectrum(f);
    for (int j = 0; j < N; ++j) {
        std::complex<double> s(0.0, f.grid->xi[j]);
        std::complex<double> p(1.0, 0.0);
        for (int o = 0; o < order; ++o) p *= s;
        F.c[j] *= p;
    }
    if (order & 1) F.c[N / 2] = 0.0; // unpaired Nyquist mode
    return from_spectrum(F);
}

Spectrum dealias(const Spectrum& F) {
    const int N = F.grid->N;
    Spectrum G = F;
    for (int j = 0; j < N; ++j)
        if (3 * std::abs(k_of_index(j, N)) > N) G.c[j] = 0.0;
    return G;
}

double linf_norm(const RealField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::fabs(x));
    return m;
}

double l2_norm(const RealField& f) {
    double s = 0.0;
    for (double x : f.v) s += x * x;
    return std::sqrt(f.grid->dx * s);
}

bool all_finite(const RealField& f) {
    for (double x : f.v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace dp2c
