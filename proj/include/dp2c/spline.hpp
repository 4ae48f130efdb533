#pragma once
// Periodic cubic spline on the equispaced grid, plus a slow exact
// trigonometric evaluator kept for validation.

#include "dp2c/grid.hpp"

namespace dp2c {

class PeriodicSpline {
  public:
    explicit PeriodicSpline(const RealField& f);

    double eval(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;

  private:
    GridPtr grid_;
    std::vector<double> y_;
    std::vector<double> m_; // second derivatives at nodes
    void locate(double x, int& i, double& a, double& b) const;
};

// exact evaluation of the band-limited interpolant at arbitrary points
std::vector<double> trig_eval(const RealField& f, const std::vector<double>& points);

} // namespace dp2c
