// SPDX-License-Identifier: Apache-2.0
// The noise term theta(t,x) = int_R int_0^t p(t-s, x-y) sigma(s,y) ds dmu(y).
//
// Time integration is product integration against the exact antiderivative
//   P(tau, z) = int_0^tau p(u, z) du
//             = sqrt(tau/pi) exp(-z^2/(4 tau)) - |z|/2 erfc(|z| / (2 sqrt(tau))),
// with sigma frozen at the midpoint of every sub-step of width h. With
// s_i = i h and M = t / h sub-steps,
//   q(t, x, y) = sum_{i<M} sigma(s_i + h/2, y) [P(t - s_i, x - y) - P(t - s_i - h, x - y)].
// The y-integral against mu uses the cell average of q over each cell,
// with sigma held at the cell center:
//   theta(t, x_k) = sum_j qbar(t, x_k, y_j) mu_j.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "smpde/grid.hpp"
#include "smpde/measure.hpp"
#include "smpde/profile.hpp"

namespace smpde {

/// phi(s) for separable sigma(s, y) = phi(s) c(y).
struct TimeFactor {
    enum class Kind { constant, harmonic, linear, custom };
    Kind kind = Kind::constant;
    /// constant: offset; harmonic: offset + amplitude sin(2 pi s / period + phase);
    /// linear: offset + slope s.
    double offset = 1.0;
    double amplitude = 0.0;
    double period = 1.0;
    double phase = 0.0;
    double slope = 0.0;
    /// custom: arbitrary function with a declared period (0 = not periodic).
    std::function<double(double)> fn;

    static TimeFactor constant(double value);
    static TimeFactor harmonic(double offset, double amplitude, double period, double phase = 0.0);
    static TimeFactor linear(double offset, double slope);
    static TimeFactor custom(std::function<double(double)> fn, double period);

    double operator()(double s) const;
    /// Declared period; 0 when the factor has no period (linear, custom aperiodic).
    double declared_period() const;
    /// phi(s / eps)
    TimeFactor time_scaled(double eps) const;
};

std::string to_string(TimeFactor::Kind kind);
TimeFactor::Kind time_factor_kind_from_string(const std::string& name);

class SigmaSpec {
public:
    enum class Family { constant, separable_periodic, custom_table };

    struct Bounds {
        double c_sigma = 1.0;
        double l_sigma = 1.0;
        double beta = 0.75;
    };

    SigmaSpec();  // sigma = 0

    static SigmaSpec constant(double value);
    static SigmaSpec constant(double value, Bounds declared);
    static SigmaSpec separable(TimeFactor phi, Profile c, Bounds declared);
    /// values[k * ncells + i] = sigma(k * dt_table, x0 + (i + 1/2) dx); linear in s between rows,
    /// held constant after the last row, piecewise constant in y, zero outside the cells.
    static SigmaSpec table(double dt_table, double x0, double dx, std::size_t ncells, std::vector<double> values,
                           Bounds declared);
    /// Default sweep coefficient (1 + 0.5 sin 2 pi s) exp(-y^2), C = 1.5, L = 1.5, beta = 0.75.
    static SigmaSpec default_sweep();

    double operator()(double s, double y) const;

    Family family() const { return family_; }
    const Bounds& bounds() const { return bounds_; }
    const TimeFactor& time_factor() const { return phi_; }
    const Profile& profile() const { return profile_; }
    double constant_value() const { return value_; }
    bool is_zero() const;
    /// True when sigma does not depend on s.
    bool time_independent() const;
    /// Time scale that quadrature must resolve (period, table step); +inf if none.
    double time_scale() const;

    /// sigma(s / eps, y)
    SigmaSpec time_scaled(double eps) const;

    /// Checks |sigma| <= C and the Hoelder bound on 1e3 pseudo-random triples
    /// (s, y1, y2) with |y| <= y_extent; throws AssumptionError on violation.
    void spot_check(double y_extent = 10.0, std::uint64_t seed = 0x5eed) const;

    // table access
    double table_dt() const { return table_dt_; }
    double table_x0() const { return table_x0_; }
    double table_dx() const { return table_dx_; }
    std::size_t table_cells() const { return table_cells_; }
    const std::vector<double>& table_values() const { return table_; }

private:
    Family family_ = Family::constant;
    Bounds bounds_{};
    double value_ = 0.0;
    TimeFactor phi_{};
    Profile profile_{};
    double table_dt_ = 1.0;
    double table_x0_ = 0.0;
    double table_dx_ = 1.0;
    std::size_t table_cells_ = 0;
    std::vector<double> table_;
};

std::string to_string(SigmaSpec::Family family);

/// P(tau, z) = int_0^tau p(u, z) du.
double kernel_antiderivative(double tau, double z);

/// (1/dx) int_{z-dx/2}^{z+dx/2} P(tau, zeta) dzeta, evaluated in closed form.
double kernel_cell_average(double tau, double z, double dx);

/// Sub-steps per grid step so that h <= time_scale / 8.
std::size_t theta_substeps(const GridSpec& grid, const SigmaSpec& sigma);

/// q(t, x, y) with `substeps` equal sub-steps on [0, t] (0 picks max(64, 8 t / time_scale)).
double q_kernel(double t, double x, double y, const SigmaSpec& sigma, std::size_t substeps = 0);

/// q averaged in y over [y - dy/2, y + dy/2] with sigma held at y.
double q_cell_average(double t, double x, double y, double dy, const SigmaSpec& sigma, std::size_t substeps = 0);

/// Tables of the time-integrated kernel for one grid; reusable across samples.
class ThetaOperator {
public:
    ThetaOperator(const GridSpec& grid, std::size_t substeps);
    ~ThetaOperator();
    ThetaOperator(ThetaOperator&&) noexcept;
    ThetaOperator& operator=(ThetaOperator&&) noexcept;

    const GridSpec& grid() const { return grid_; }
    std::size_t substeps() const { return substeps_; }

    /// theta on every level (row 0 is zero).
    SpaceTimeField field(const MeasureSample& sample, const SigmaSpec& sigma) const;

private:
    struct Tables;
    GridSpec grid_;
    std::size_t substeps_;
    std::unique_ptr<Tables> tables_;
};

SpaceTimeField theta_field(const MeasureSample& sample, const SigmaSpec& sigma);
Field theta(std::size_t t_index, const MeasureSample& sample, const SigmaSpec& sigma);
/// Reference: sum_j q_cell_average(t, x_k, y_j, dx) mu_j with the same sub-steps as theta_field.
Field theta_direct(std::size_t t_index, const MeasureSample& sample, const SigmaSpec& sigma);

/// g(x) with g^2(x) = sum_j (|j|+1)^theta w_j(x) (mu((j,j+1])^2 + E_j), where
/// w_j(x) = exp(2 (1 - (|x - j| - 1)^2) lambda_tilde / t_max) and E_j is the dyadic energy.
double envelope(double x, const MeasureSample& sample, double alpha, double theta, double lambda_tilde,
                double t_max);
/// envelope at every cell center of the sample grid.
Field envelope_field(const MeasureSample& sample, double alpha, double theta, double lambda_tilde, double t_max);

struct RegularityReport {
    double gamma1_est = 0.0;  // spatial exponent on t in [delta, T]
    double gamma1_se = 0.0;
    double gamma2_est = 0.0;  // temporal exponent on t in [delta, T]
    double gamma2_se = 0.0;
    double sup_bound = 0.0;
    std::vector<double> l2_trace;
    /// theta vanishes identically; the exponents are then reported as 0.
    bool degenerate = false;
};

/// Hoelder fits of a computed theta; delta = delta_frac * T.
RegularityReport regularity_report(const SpaceTimeField& theta, double delta_frac = 0.1);
RegularityReport regularity_report(const MeasureSample& sample, const SigmaSpec& sigma, double delta_frac = 0.1);

}  // namespace smpde
