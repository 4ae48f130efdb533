#include "dp2c/characteristics.hpp"

#include "dp2c/spline.hpp"

#include <cmath>

namespace dp2c {
namespace {

double wrap(double x, double L) {
    double t = std::fmod(x + L, 2.0 * L);
    if (t < 0.0) t += 2.0 * L;
    return t - L;
}

} // namespace

CharacteristicBundle seed_bundle(const GridPtr& grid, int M,
                                 const RealField& rho0) {
    if (M > grid->N) throw std::invalid_argument("more markers than nodes");
    if (M < 1) throw std::invalid_argument("need at least one marker");
    CharacteristicBundle b;
    b.labels.resize(M);
    const double h = 2.0 * grid->L / M;
    for (int i = 0; i < M; ++i) b.labels[i] = -grid->L + i * h;
    b.positions = b.labels;
    b.accumulated_divergence.assign(M, 0.0);
    b.rho0 = interpolate(rho0, b.labels);
    b.t = 0.0;
    return b;
}

std::vector<double> interpolate(const RealField& f,
                                const std::vector<double>& points,
                                InterpMode mode) {
    if (mode == InterpMode::trigonometric) return trig_eval(f, points);
    PeriodicSpline s(f);
    std::vector<double> out(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = s.eval(points[i]);
    return out;
}

CharacteristicBundle advance_bundle(const CharacteristicBundle& b,
                                    const RealField& u, const RealField& u_x,
                                    double dt) {
    check_same_grid(u.grid, u_x.grid);
    PeriodicSpline su(u), sux(u_x);
    const double L = u.grid->L;
    CharacteristicBundle nb = b;
    const size_t M = b.positions.size();
    for (size_t i = 0; i < M; ++i) {
        const double q = b.positions[i];
        const double k1 = su.eval(q);
        const double k2 = su.eval(q + 0.5 * dt * k1);
        const double k3 = su.eval(q + 0.5 * dt * k2);
        const double k4 = su.eval(q + dt * k3);
        nb.positions[i] = wrap(q + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), L);
        const double g1 = sux.eval(q);
        const double g2 = sux.eval(q + 0.5 * dt * k1);
        const double g3 = sux.eval(q + 0.5 * dt * k2);
        const double g4 = sux.eval(q + dt * k3);
        nb.accumulated_divergence[i] += dt / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
    }
    nb.t = b.t + dt;
    return nb;
}

std::vector<double> jacobian(const CharacteristicBundle& b) {
    std::vector<double> j(b.accumulated_divergence.size());
    for (size_t i = 0; i < j.size(); ++i)
        j[i] = std::exp(b.accumulated_divergence[i]);
    return j;
}

double conservation_residual(const State& s, const CharacteristicBundle& b) {
    PeriodicSpline srho(s.rho);
    double worst = 0.0;
    for (size_t i = 0; i < b.positions.size(); ++i) {
        const double qx = std::exp(b.accumulated_divergence[i]);
        const double r = srho.eval(b.positions[i]) * qx * qx - b.rho0[i];
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

} // namespace dp2c
