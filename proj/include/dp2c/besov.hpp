#pragma once
// Dyadic frequency decomposition and Besov / Sobolev norms on the grid.

#include "dp2c/grid.hpp"

#include <limits>

namespace dp2c {

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

struct DyadicPartition {
    GridPtr grid;
    std::vector<double> chi;                    // chi(xi_k)
    std::vector<std::vector<double>> phi_blocks; // phi(2^{-q} xi_k), q = 0..Q_max
    int Q_max;
};

struct BesovParams {
    double s;
    double p; // Lebesgue exponent, kInfExponent allowed
    double r; // summation exponent, kInfExponent allowed
};

DyadicPartition build_partition(const GridPtr& grid);

// smooth cutoffs behind the partition: theta is 1 on [0,3/4], 0 on [4/3,inf)
double lp_chi(double xi);
double lp_phi(double xi);

// Delta_q f (q = -1 is the low ball chi(D) f)
RealField lp_block(const RealField& f, int q, const DyadicPartition& part);

// S_q f = chi(2^{-q} D) f
RealField low_freq(const RealField& f, int q, const DyadicPartition& part);

double lp_norm(const RealField& f, double p); // trapezoid, max norm for p = inf

double besov_norm(const RealField& f, const BesovParams& params,
                  const DyadicPartition& part);

double sobolev_norm(const RealField& f, double s);

// ratio ||fg||_B / (||f||_B ||g||_inf + ||g||_B ||f||_inf);
// with derivative_mode, ratio ||f g_x||_{H^s} / (||f||_{H^{s+1}} ||g||_inf
//                                               + ||f||_inf ||g_x||_{H^s})
double probe_product_estimate(const RealField& f, const RealField& g,
                              const BesovParams& params,
                              const DyadicPartition& part,
                              bool derivative_mode = false);

} // namespace dp2c
