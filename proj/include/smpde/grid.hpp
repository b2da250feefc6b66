// SPDX-License-Identifier: Apache-2.0
// Truncated space-time lattice and the discrete field norms.
//
// The real line is truncated to [x_min, x_max] and split into nx cells of
// width dx. Fields are sampled at cell centers, so a field is also read as a
// piecewise-constant function and the rectangle rule is exact for it. Time
// runs over nt steps of width dt on [0, t_max].
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smpde {

struct GridSpec {
    double x_min = -10.0;
    double x_max = 10.0;
    std::size_t nx = 1024;
    double t_max = 1.0;
    std::size_t nt = 256;

    /// Throws DomainError unless x_min < x_max, nx >= 2 is a power of two,
    /// nt >= 1 and t_max > 0.
    void validate() const;

    double dx() const { return (x_max - x_min) / static_cast<double>(nx); }
    double dt() const { return t_max / static_cast<double>(nt); }
    double x(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
    double t(std::size_t n) const { return static_cast<double>(n) * dt(); }

    /// Index of the cell edge at position `pos`, or -1 if `pos` is not on an edge.
    long edge_index(double pos) const;

    /// Mass of p(t_max, .) lying outside the box, for a source at the origin.
    double truncation_mass() const;

    bool operator==(const GridSpec&) const = default;
};

/// u(t, .) sampled at the cell centers of a grid.
class Field {
public:
    Field() = default;
    Field(GridSpec grid, std::vector<double> values, double t_label = 0.0);

    static Field zeros(const GridSpec& grid, double t_label = 0.0);

    template <typename F>
    static Field from_function(const GridSpec& grid, F&& fn, double t_label = 0.0) {
        std::vector<double> v(grid.nx);
        for (std::size_t i = 0; i < grid.nx; ++i) v[i] = fn(grid.x(i));
        return Field(grid, std::move(v), t_label);
    }

    const GridSpec& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    double t_label() const { return t_label_; }
    void set_t_label(double t) { t_label_ = t; }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

private:
    GridSpec grid_;
    std::vector<double> values_;
    double t_label_ = 0.0;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// u on every time level t_0 = 0, ..., t_nt of a grid, stored row-major.
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    explicit SpaceTimeField(GridSpec grid);
    SpaceTimeField(GridSpec grid, std::vector<double> values);

    const GridSpec& grid() const { return grid_; }
    std::size_t rows() const { return grid_.nt + 1; }
    std::size_t cols() const { return grid_.nx; }

    std::span<const double> row(std::size_t n) const { return {values_.data() + n * grid_.nx, grid_.nx}; }
    std::span<double> row(std::size_t n) { return {values_.data() + n * grid_.nx, grid_.nx}; }
    Field slice(std::size_t n) const;
    void set_row(std::size_t n, std::span<const double> v);

    std::span<const double> data() const { return values_; }
    std::span<double> data() { return values_; }

    SpaceTimeField& operator-=(const SpaceTimeField& other);

private:
    GridSpec grid_;
    std::vector<double> values_;
};

SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);

double l2_norm(const Field& f);
double l4_norm(const Field& f);
double sup_norm(const Field& f);
double l1_norm(const Field& f);
double l2_distance(const Field& f, const Field& g);

double l2_norm(std::span<const double> v, double dx);
double l1_norm(std::span<const double> v, double dx);
double l4_norm(std::span<const double> v, double dx);
double sup_norm(std::span<const double> v);

/// max_n || u(t_n) ||_{L2}
double sup_t_l2_norm(const SpaceTimeField& u);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

}  // namespace smpde
