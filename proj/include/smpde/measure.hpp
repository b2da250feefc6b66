// SPDX-License-Identifier: Apache-2.0
// Realizations of stochastic measures on the finest grid cells.
//
// A MeasureSample stores one increment per grid cell. The measure of any
// interval whose endpoints are cell edges is the sum of the contained
// increments, so additivity holds by construction.
//
// Supported generators:
//  - wiener: independent N(0, dx) increments.
//  - weighted_wiener: increments of int xi(t) dW_t, variance xi(mid)^2 dx.
//  - fbm: increments of one fractional Brownian path (H in (1/2, 1)), drawn
//    from the exact increment covariance by Cholesky factorization.
//  - alpha_stable: symmetric alpha-stable increments drawn with the
//    Chambers-Mallows-Stuck transform. Scale convention: each increment is
//    dx^{1/alpha} S where S has characteristic function exp(-|u|^alpha).
//    For alpha = 2 this is N(0, 2 dx).
//  - deterministic_lebesgue: increment = dx (the degenerate oracle).
//  - explicit_increments: caller-supplied values (used for constructed cases).
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "smpde/grid.hpp"

namespace smpde {

enum class MeasureKind : std::uint32_t {
    wiener = 0,
    weighted_wiener = 1,
    fbm = 2,
    alpha_stable = 3,
    deterministic_lebesgue = 4,
    explicit_increments = 5,
};

std::string to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& name);

/// Deterministic weight xi(t) of a weighted Wiener measure.
struct WeightSpec {
    enum class Kind : std::uint32_t { constant = 0, gaussian = 1, power_decay = 2 };
    Kind kind = Kind::gaussian;
    double amplitude = 1.0;
    /// gaussian: xi = a exp(-rate t^2); power_decay: xi = a (1 + t^2)^(-rate).
    double rate = 1.0;

    double operator()(double t) const;
    void validate() const;
    bool operator==(const WeightSpec&) const = default;
};

std::string to_string(WeightSpec::Kind kind);
WeightSpec::Kind weight_kind_from_string(const std::string& name);

struct MeasureParams {
    double hurst = 0.75;
    double alpha_stable = 1.5;
    WeightSpec weight{};
    bool operator==(const MeasureParams&) const = default;
};

struct MeasureSample {
    GridSpec grid;
    MeasureKind kind = MeasureKind::wiener;
    MeasureParams params{};
    std::uint64_t seed = 0;
    std::vector<double> increments;

    std::size_t size() const { return increments.size(); }
};

MeasureSample sample_wiener(const GridSpec& grid, std::uint64_t seed);
MeasureSample sample_weighted_wiener(const GridSpec& grid, const WeightSpec& weight, std::uint64_t seed);
MeasureSample sample_fbm(const GridSpec& grid, double hurst, std::uint64_t seed);
MeasureSample sample_alpha_stable(const GridSpec& grid, double alpha_stable, std::uint64_t seed);
MeasureSample lebesgue_measure(const GridSpec& grid);
MeasureSample measure_from_increments(const GridSpec& grid, std::vector<double> increments);

/// Draw a sample of the given kind; `params` supplies H, alpha or the weight.
MeasureSample sample_measure(const GridSpec& grid, MeasureKind kind, const MeasureParams& params,
                             std::uint64_t seed);

/// mu((a, b]); a and b must be cell edges with a <= b.
double measure_of(const MeasureSample& sample, double a, double b);

/// Number of dyadic levels available per unit interval (log2 of cells per unit).
/// Throws DomainError when unit intervals are not unions of cells or the
/// cell count per unit is not a power of two.
int dyadic_depth(const GridSpec& grid);

/// sum_{n=1}^{depth} 2^{n(1-2 alpha)} sum_k |mu(Delta_kn^{(j)})|^2 with depth = dyadic_depth.
double dyadic_energy(const MeasureSample& sample, long j, double alpha);
/// Same sum truncated at `depth` (1 <= depth <= dyadic_depth).
double dyadic_energy(const MeasureSample& sample, long j, double alpha, int depth);

/// Integer j with [j, j+1] inside the box, ascending.
std::vector<long> unit_intervals(const GridSpec& grid);

/// sum_j (|j|+1)^theta mu((j, j+1])^2 over the unit intervals inside the box.
double tail_weight(const MeasureSample& sample, double theta);

/// sum over cells of f(cell) * mu(cell); f must live on the sample grid.
double integrate_cellwise(const MeasureSample& sample, const Field& f);
double integrate_cellwise(const MeasureSample& sample, std::span<const double> f);

/// Sample on the grid with nx/2 cells; each coarse increment is the sum of two fine ones.
MeasureSample coarsen(const MeasureSample& sample);

/// Cellwise a*mu1 + b*mu2 (explicit_increments kind).
MeasureSample combine(double a, const MeasureSample& mu1, double b, const MeasureSample& mu2);

void save_measure(const MeasureSample& sample, const std::filesystem::path& path);
MeasureSample load_measure(const std::filesystem::path& path);

}  // namespace smpde
