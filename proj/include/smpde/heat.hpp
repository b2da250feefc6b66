// SPDX-License-Identifier: Apache-2.0
// Heat kernel on the line and the Duhamel operators built from it.
//
// p(t, x) = exp(-x^2 / (4t)) / (2 sqrt(pi t)) is the fundamental solution of
// u_t = u_xx. On a grid the operators are
//
//   semigroup:  (S(t) u0)(x_i)  = dx sum_j p(t, x_i - y_j) u0_j
//   J1:         (J1 v)(t_n)     = sum_{l=1..n} K1_l * v(t_{n-l})
//   J2:         (J2 w)(t_n)     = sum_{l=1..n} K2_l * w(t_{n-l})
//
// where the integrand is frozen at the left end of every time step and
//   K1_l = dt dx p((l - 1/2) dt, .)                       (midpoint in s),
//   K2_l = -dt dx p_x((l - 1/2) dt, .)          for l >= 2,
//   K2_1 = -dx int_0^dt p_x(tau, .) dtau        (tau = r^2 substitution).
// The minus sign makes J2 w = int int d/dy[p(t-s, x-y)] w(s,y) dy ds, so
// the mild form of u_t = u_xx + f + d/dx g(u) carries J2(-g).
//
// Outside the box J1 sees zero, while J2 extends w by its boundary values;
// J2 therefore annihilates constants on the whole box.
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "smpde/grid.hpp"
#include "smpde/toeplitz.hpp"

namespace smpde {

/// Below this time the kernel is replaced by the identity (Dirac action).
inline constexpr double kDiracThreshold = 1e-12;

double kernel(double t, double x);
double kernel_dx(double t, double x);

/// int_0^tau p(u, z) du in closed form.
double kernel_time_integral(double tau, double z);

/// int_a^b p_x(tau, z) dtau by the substitution tau = r^2 and composite
/// Gauss-Legendre in r. Valid for 0 <= a < b.
double kernel_dx_time_integral(double a, double b, double z);

/// Kernel table p(t, k dx) dx on offsets k = -(nx-1) .. nx-1.
std::vector<double> semigroup_table(const GridSpec& grid, double t);

Field apply_semigroup(const Field& u0, double t, ConvolutionMethod method = ConvolutionMethod::fft);

/// Kernel tables for one grid, shared by every Duhamel evaluation on it.
class HeatOperators {
public:
    explicit HeatOperators(const GridSpec& grid);
    ~HeatOperators();
    HeatOperators(HeatOperators&&) noexcept;
    HeatOperators& operator=(HeatOperators&&) noexcept;

    const GridSpec& grid() const { return grid_; }

    Field semigroup(const Field& u0, double t, ConvolutionMethod method = ConvolutionMethod::fft) const;
    /// Rows S(t_n) u0 for n = 0..nt; row 0 is u0.
    SpaceTimeField semigroup_levels(const Field& u0) const;

    Field j1(const SpaceTimeField& v, std::size_t t_index, ConvolutionMethod method = ConvolutionMethod::fft) const;
    Field j2(const SpaceTimeField& w, std::size_t t_index, ConvolutionMethod method = ConvolutionMethod::fft) const;

    /// J1 v + J2 w on every level (row 0 is zero). Either operand may be null.
    SpaceTimeField duhamel(const SpaceTimeField* v, const SpaceTimeField* w) const;

    std::span<const double> j1_kernel(std::size_t level) const;
    std::span<const double> j2_kernel(std::size_t level) const;

private:
    struct Tables;
    void add_j2_tails(const SpaceTimeField& w, std::size_t n, std::size_t level, std::span<double> out) const;

    GridSpec grid_;
    std::unique_ptr<Tables> tables_;
};

Field j1(const SpaceTimeField& v, std::size_t t_index);
Field j2(const SpaceTimeField& w, std::size_t t_index);

}  // namespace smpde
