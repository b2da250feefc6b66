// SPDX-License-Identifier: Apache-2.0
// Fast-oscillating noise coefficient sigma(t / eps, y) against its time
// average, and the weakly singular series used to close the Gronwall step.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smpde/measure.hpp"
#include "smpde/solver.hpp"
#include "smpde/stochastic_convolution.hpp"

namespace smpde {

/// Time average of sigma; keeps the declared constants.
/// Constant and time-independent specs are returned unchanged.
SigmaSpec sigma_bar(const SigmaSpec& sigma);

/// (1/P) int_0^P phi(s) ds by Gauss-Legendre panels.
double period_mean(const TimeFactor& phi);

struct GSigmaReport {
    double sup = 0.0;
    double r_at_sup = 0.0;
    std::size_t periods_checked = 0;  // 0 when sigma has no declared period
};

/// sup over r in [0, r_max] and y of |int_0^r (sigma(s, y) - sigma_bar(y)) ds|.
/// Periodic factors are integrated over every whole period up to r_max and the
/// per-period sup must not grow; aperiodic ones compare the windows [0, r_max / 2]
/// and [0, r_max]. Growth raises AssumptionError.
GSigmaReport g_sigma_sup(const SigmaSpec& sigma, double r_max);

struct AveragingScenario {
    CoefficientSet coeffs;  // coeffs.sigma is the slow coefficient sigma(s, y)
    std::vector<double> eps_list{1.0, 0.25, 0.0625, 0.015625};
    GridSpec grid{};
    MeasureKind measure = MeasureKind::weighted_wiener;
    MeasureParams measure_params{};
    std::uint64_t seed = 0;
    SolverConfig solver{};
    std::size_t threads = 1;  // per-epsilon solves run concurrently

    void validate() const;
    /// Burgers with sigma = (1 + sin 2 pi s) exp(-y^2) and weighted Wiener noise.
    static AveragingScenario standard();
};

struct ConvergenceRow {
    double epsilon = 0.0;
    double sup_t_l2_distance = 0.0;
    double xi_sup = 0.0;
    std::size_t iterations = 0;
};

struct RateFit {
    double exponent = 0.0;
    double std_error = 0.0;
    bool valid = false;  // false when fewer than two positive points
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    RateFit distance_rate;
    RateFit xi_rate;
    std::size_t bar_iterations = 0;
};

/// log-log least squares of value against epsilon over the positive entries.
RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& values);

/// Solves the averaged problem once and the oscillating one for every epsilon,
/// all on the same measure sample.
ConvergenceTable averaging_experiment(const AveragingScenario& scenario);
ConvergenceTable averaging_experiment(const AveragingScenario& scenario, const MeasureSample& sample);

struct GronwallValue {
    double value = 0.0;
    std::size_t terms = 0;
};

/// sum_{n >= 1} Gamma(1/4)^n / Gamma(n/4) z^{n/4 - 1}, stopped once the next
/// term falls below tol |partial sum| past the largest term. Diverges like
/// z^{-3/4} as z -> 0.
GronwallValue gronwall_series(double z, double tol = 1e-12);
/// Plain partial sum of the first n_terms terms.
double gronwall_partial_sum(double z, std::size_t n_terms);

}  // namespace smpde
