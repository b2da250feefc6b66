// SPDX-License-Identifier: Apache-2.0
// Discrete B^alpha_{2,2} norms, Hoelder exponent fits and the pathwise
// dyadic bound for integrals against a stochastic measure.
//
// For samples g_0..g_{m-1} on the cells of [c, d]:
//   D(k)^2  = dx sum_{i < m-k} (g_{i+k} - g_i)^2            (shift h = k dx)
//   W_k     = max_{k' <= k} D(k')                          (modulus w_2 at r = k dx)
//   modulus = ( int_0^{d-c} w(r)^2 r^{-2 alpha - 1} dr )^{1/2}
// where w interpolates W_k linearly between lattice shifts and the power
// weight is integrated in closed form on every lattice interval.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smpde/grid.hpp"
#include "smpde/measure.hpp"

namespace smpde {

struct BesovEstimate {
    double alpha = 0.0;
    double c = 0.0;
    double d = 0.0;
    double l2_part = 0.0;
    double modulus_part = 0.0;
    double total = 0.0;
};

/// Norm of the samples `values` covering [c, d] with cell width dx = (d - c) / size.
BesovEstimate besov_norm(std::span<const double> values, double c, double d, double alpha);
/// Norm of the restriction of `g` to [c, d]; both ends must be cell edges.
BesovEstimate besov_norm(const Field& g, double c, double d, double alpha);

struct HolderFit {
    double exponent = 0.0;
    double std_error = 0.0;
    double intercept = 0.0;
    std::vector<double> lags;       // in physical units
    std::vector<double> mean_incr;  // mean |v(i + lag) - v(i)|
};

/// Slope of log mean |increment| against log lag. Lags are integers in
/// [min_lag, max_lag] (geometric spacing), scaled by `spacing`. Several series
/// are pooled into one mean per lag.
HolderFit holder_fit(const std::vector<std::span<const double>>& series, double spacing, std::size_t min_lag,
                     std::size_t max_lag);
HolderFit holder_fit(std::span<const double> values, double spacing, std::size_t min_lag, std::size_t max_lag);

struct DyadicBoundCheck {
    double lhs = 0.0;          // |int_[j,j+1] q dmu|
    double first_term = 0.0;   // |q(j) mu([j, j+1])|
    double besov = 0.0;        // ||q||_{B^alpha_22([j, j+1])}
    double energy = 0.0;       // dyadic energy of mu on [j, j+1]
    double rhs = 0.0;          // first_term + C besov sqrt(energy)
    double c_required = 0.0;   // smallest C for which lhs <= rhs
    double slack = 0.0;        // lhs / rhs (0 when both vanish)
    bool holds = true;
};

/// `q_values` are the cell values of q on [j, j+1] (cell-midpoint projection).
DyadicBoundCheck verify_dyadic_bound(std::span<const double> q_values, const MeasureSample& sample, long j,
                                     double alpha, double C);
/// Same, reading q from a field on the sample grid.
DyadicBoundCheck verify_dyadic_bound(const Field& q, const MeasureSample& sample, long j, double alpha, double C);

}  // namespace smpde
