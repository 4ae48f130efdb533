#pragma once
// Periodic grid on [-L, L) and discrete Fourier representation.
//
// Normalization (frozen): coeffs[k] are true Fourier coefficients c_k of
//   f(x) = sum_k c_k exp(i xi_k x),  xi_k = pi k / L,
// i.e. the forward transform carries the 1/N factor together with the
// (-1)^k phase that accounts for the grid starting at x = -L.

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

namespace dp2c {

struct Grid {
    int N;                     // number of nodes, power of two >= 16
    double L;                  // half period
    double dx;                 // 2L/N
    std::vector<double> nodes; // x_j = -L + j dx
    std::vector<double> xi;    // xi_k = pi k / L in FFT index order
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int N, double L);

// signed integer wavenumber for FFT index j (j < N/2 ? j : j - N)
inline int k_of_index(int j, int N) { return j < N / 2 ? j : j - N; }

struct RealField {
    GridPtr grid;
    std::vector<double> v;

    RealField() = default;
    explicit RealField(GridPtr g, double fill = 0.0)
        : grid(std::move(g)), v(grid->N, fill) {}
};

struct Spectrum {
    GridPtr grid;
    std::vector<std::complex<double>> c; // FFT index order

    Spectrum() = default;
    explicit Spectrum(GridPtr g)
        : grid(std::move(g)), c(grid->N, {0.0, 0.0}) {}
};

Spectrum to_spectrum(const RealField& f);
RealField from_spectrum(const Spectrum& F);

RealField spectral_derivative(const RealField& f, int order);
Spectrum dealias(const Spectrum& F);

// pointwise helpers
double linf_norm(const RealField& f);
double l2_norm(const RealField& f); // trapezoid: sqrt(dx * sum f^2)
bool all_finite(const RealField& f);

inline void check_same_grid(const GridPtr& a, const GridPtr& b) {
    if (a.get() != b.get() && (a->N != b->N || a->L != b->L))
        throw std::invalid_argument("grid mismatch");
}

} // namespace dp2c
