#include "dp2c/besov.hpp"

#include <cmath>

namespace dp2c {
namespace {

double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// smooth transition: 1 for x <= 0, 0 for x >= 1
double ramp(double x) {
    const double a = glue(1.0 - x), b = glue(x);
    return a / (a + b);
}

} // namespace

// theta(|xi|): 1 on [0, 3/4], 0 beyond 4/3, exp(-1/x) glue between.
// phi(xi) = chi(xi/2) - chi(xi), supported in the ring [3/4, 8/3].
double lp_chi(double xi) {
    const double a = std::fabs(xi);
    return ramp((a - 0.75) / (4.0 / 3.0 - 0.75));
}

double lp_phi(double xi) { return lp_chi(0.5 * xi) - lp_chi(xi); }

DyadicPartition build_partition(const GridPtr& grid) {
    DyadicPartition part;
    part.grid = grid;
    const int N = grid->N;
    const double xi_max = M_PI * (N / 2) / grid->L;
    part.Q_max = static_cast<int>(std::ceil(std::log2(xi_max))) + 1;
    part.chi.resize(N);
    for (int j = 0; j < N; ++j) part.chi[j] = lp_chi(grid->xi[j]);
    part.phi_blocks.resize(part.Q_max + 1);
    for (int q = 0; q <= part.Q_max; ++q) {
        auto& blk = part.phi_blocks[q];
        blk.resize(N);
        const double scale = std::ldexp(1.0, -q);
        for (int j = 0; j < N; ++j) blk[j] = lp_phi(scale * grid->xi[j]);
    }
    return part;
}

RealField lp_block(const RealField& f, int q, const DyadicPartition& part) {
    if (q < -1) throw std::invalid_argument("block index must be >= -1");
    if (q > part.Q_max) return RealField(f.grid);
    Spectrum F = to_spectrum(f);
    const auto& w = (q == -1) ? part.chi : part.phi_blocks[q];
    for (int j = 0; j < f.grid->N; ++j) F.c[j] *= w[j];
    return from_spectrum(F);
}

RealField low_freq(const RealField& f, int q, const DyadicPartition& part) {
    Spectrum F = to_spectrum(f);
    const double scale = std::ldexp(1.0, -q);
    for (int j = 0; j < f.grid->N; ++j)
        F.c[j] *= lp_chi(scale * f.grid->xi[j]);
    return from_spectrum(F);
}

double lp_norm(const RealField& f, double p) {
    if (p == kInfExponent) return linf_norm(f);
    double s = 0.0;
    for (double x : f.v) s += std::pow(std::fabs(x), p);
    return std::pow(f.grid->dx * s, 1.0 / p);
}

double besov_norm(const RealField& f, const BesovParams& params,
                  const DyadicPartition& part) {
    std::vector<double> terms;
    for (int q = -1; q <= part.Q_max; ++q) {
        const double w = std::pow(2.0, params.s * q);
        terms.push_back(w * lp_norm(lp_block(f, q, part), params.p));
    }
    if (params.r == kInfExponent) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double s = 0.0;
    for (double t : terms) s += std::pow(t, params.r);
    return std::pow(s, 1.0 / params.r);
}

double sobolev_norm(const RealField& f, double s) {
    const Spectrum F = to_spectrum(f);
    double acc = 0.0;
    for (int j = 0; j < f.grid->N; ++j) {
        const double xi = f.grid->xi[j];
        acc += std::pow(1.0 + xi * xi, s) * std::norm(F.c[j]);
    }
    return std::sqrt(2.0 * f.grid->L * acc);
}

double probe_product_estimate(const RealField& f, const RealField& g,
                              const BesovParams& params,
                              const DyadicPartition& part,
                              bool derivative_mode) {
    if (derivative_mode) {
        const RealField gx = spectral_derivative(g, 1);
        RealField fgx(f.grid);
        for (int j = 0; j < f.grid->N; ++j) fgx.v[j] = f.v[j] * gx.v[j];
        const double num = sobolev_norm(fgx, params.s);
        const double den = sobolev_norm(f, params.s + 1.0) * linf_norm(g) +
                           linf_norm(f) * sobolev_norm(gx, params.s);
        return den < 1e-14 ? 0.0 : num / den;
    }
    RealField fg(f.grid);
    for (int j = 0; j < f.grid->N; ++j) fg.v[j] = f.v[j] * g.v[j];
    const double num = besov_norm(fg, params, part);
    const double den = besov_norm(f, params, part) * linf_norm(g) +
                       besov_norm(g, params, part) * linf_norm(f);
    return den < 1e-14 ? 0.0 : num / den;
}

} // namespace dp2c
