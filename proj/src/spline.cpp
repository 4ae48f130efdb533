#include "dp2c/spline.hpp"

#include <cmath>

namespace dp2c {
namespace {

// cyclic tridiagonal solve (Sherman-Morrison), constant diagonals:
// diag b, off-diagonals a (sub) and c (super), wrap corners a, c
std::vector<double> solve_cyclic(double a, double b, double c,
                                 std::vector<double> r) {
    const int n = static_cast<int>(r.size());
    const double gamma = -b;
    std::vector<double> bb(n, b), u(n, 0.0), x(n), z(n);
    bb[0] = b - gamma;
    bb[n - 1] = b - a * c / gamma;
    u[0] = gamma;
    u[n - 1] = c;

    auto tridiag = [&](const std::vector<double>& rhs) {
        std::vector<double> sol(n), cp(n);
        double beta = bb[0];
        sol[0] = rhs[0] / beta;
        for (int i = 1; i < n; ++i) {
            cp[i] = c / beta;
            beta = bb[i] - a * cp[i];
            sol[i] = (rhs[i] - a * sol[i - 1]) / beta;
        }
        for (int i = n - 2; i >= 0; --i) sol[i] -= cp[i + 1] * sol[i + 1];
        return sol;
    };

    x = tridiag(r);
    z = tridiag(u);
    const double fact = (x[0] + a * x[n - 1] / gamma) /
                        (1.0 + z[0] + a * z[n - 1] / gamma);
    for (int i = 0; i < n; ++i) x[i] -= fact * z[i];
    return x;
}

} // namespace

PeriodicSpline::PeriodicSpline(const RealField& f)
    : grid_(f.grid), y_(f.v) {
    const int n = grid_->N;
    const double h = grid_->dx;
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
        const double yp = y_[(i + 1) % n], ym = y_[(i + n - 1) % n];
        r[i] = 6.0 * (yp - 2.0 * y_[i] + ym) / (h * h);
    }
    m_ = solve_cyclic(1.0, 4.0, 1.0, std::move(r));
}

void PeriodicSpline::locate(double x, int& i, double& a, double& b) const {
    const double L = grid_->L, h = grid_->dx;
    double t = std::fmod(x + L, 2.0 * L);
    if (t < 0.0) t += 2.0 * L;
    i = static_cast<int>(t / h);
    if (i >= grid_->N) i = grid_->N - 1;
    a = t / h - i;      // fraction toward node i+1
    b = 1.0 - a;        // fraction toward node i
}

double PeriodicSpline::eval(double x) const {
    int i;
    double a, b;
    locate(x, i, a, b);
    const int n = grid_->N, ip = (i + 1) % n;
    const double h = grid_->dx, h2 = h * h / 6.0;
    return b * y_[i] + a * y_[ip] +
           ((b * b * b - b) * m_[i] + (a * a * a - a) * m_[ip]) * h2;
}

double PeriodicSpline::deriv(double x) const {
    int i;
    double a, b;
    locate(x, i, a, b);
    const int n = grid_->N, ip = (i + 1) % n;
    const double h = grid_->dx;
    return (y_[ip] - y_[i]) / h +
           h / 6.0 * (-(3.0 * b * b - 1.0) * m_[i] + (3.0 * a * a - 1.0) * m_[ip]);
}

double PeriodicSpline::deriv2(double x) const {
    int i;
    double a, b;
    locate(x, i, a, b);
    return b * m_[i] + a * m_[(i + 1) % grid_->N];
}

std::vector<double> trig_eval(const RealField& f, const std::vector<double>& points) {
    const Spectrum F = to_spectrum(f);
    const int N = f.grid->N;
    std::vector<double> out(points.size(), 0.0);
    for (size_t p = 0; p < points.size(); ++p) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) {
            const double xi = f.grid->xi[j];
            const int k = k_of_index(j, N);
            const std::complex<double> e(std::cos(xi * points[p]),
                                         std::sin(xi * points[p]));
            // the unpaired Nyquist mode contributes its cosine part only
            const double w = (k == -N / 2) ? e.real() * F.c[j].real()
                                           : (F.c[j] * e).real();
            s += w;
        }
        out[p] = s;
    }
    return out;
}

} // namespace dp2c
