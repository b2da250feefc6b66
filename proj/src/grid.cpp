// SPDX-License-Identifier: Apache-2.0
#include "smpde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smpde/error.hpp"

namespace smpde {

namespace {

void require_finite(std::span<const double> v, const char* where) {
    for (double x : v) {
        if (!std::isfinite(x)) detail::domain_fail(std::string(where) + ": non-finite value in field");
    }
}

}  // namespace

void GridSpec::validate() const {
    if (!(x_min < x_max)) detail::domain_fail("grid: x_min must be < x_max");
    if (nx < 2 || (nx & (nx - 1)) != 0) detail::domain_fail("grid: nx must be a power of two >= 2");
    if (nt < 1) detail::domain_fail("grid: nt must be >= 1");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) detail::domain_fail("grid: t_max must be > 0");
}

long GridSpec::edge_index(double pos) const {
    const double k = (pos - x_min) / dx();
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-9 || r < 0.0 || r > static_cast<double>(nx)) return -1;
    return static_cast<long>(r);
}

double GridSpec::truncation_mass() const {
    // P(|X| > a) for X ~ N(0, 2 t_max) on each side of the box.
    const double s = 2.0 * std::sqrt(t_max);
    return 0.5 * std::erfc(-x_min / s) + 0.5 * std::erfc(x_max / s);
}

Field::Field(GridSpec grid, std::vector<double> values, double t_label)
    : grid_(grid), values_(std::move(values)), t_label_(t_label) {
    if (values_.size() != grid_.nx) {
        std::ostringstream os;
        os << "field: expected " << grid_.nx << " values, got " << values_.size();
        detail::domain_fail(os.str());
    }
    require_finite(values_, "field");
}

Field Field::zeros(const GridSpec& grid, double t_label) {
    return Field(grid, std::vector<double>(grid.nx, 0.0), t_label);
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(grid_, other.grid_, "field +");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(grid_, other.grid_, "field -");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

SpaceTimeField::SpaceTimeField(GridSpec grid)
    : grid_(grid), values_((grid.nt + 1) * grid.nx, 0.0) {}

SpaceTimeField::SpaceTimeField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != (grid_.nt + 1) * grid_.nx) detail::domain_fail("space-time field: size mismatch");
    require_finite(values_, "space-time field");
}

Field SpaceTimeField::slice(std::size_t n) const {
    auto r = row(n);
    return Field(grid_, std::vector<double>(r.begin(), r.end()), grid_.t(n));
}

void SpaceTimeField::set_row(std::size_t n, std::span<const double> v) {
    if (v.size() != grid_.nx) detail::domain_fail("space-time field: row length mismatch");
    std::copy(v.begin(), v.end(), row(n).begin());
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& other) {
    require_same_grid(grid_, other.grid_, "space-time field -");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }

double l2_norm(std::span<const double> v, double dx) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(dx * s);
}

double l1_norm(std::span<const double> v, double dx) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return dx * s;
}

double l4_norm(std::span<const double> v, double dx) {
    double s = 0.0;
    for (double x : v) s += (x * x) * (x * x);
    return std::pow(dx * s, 0.25);
}

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double l2_norm(const Field& f) {
    require_finite(f.values(), "l2_norm");
    return l2_norm(f.values(), f.grid().dx());
}

double l4_norm(const Field& f) {
    require_finite(f.values(), "l4_norm");
    return l4_norm(f.values(), f.grid().dx());
}

double sup_norm(const Field& f) {
    require_finite(f.values(), "sup_norm");
    return sup_norm(f.values());
}

double l1_norm(const Field& f) {
    require_finite(f.values(), "l1_norm");
    return l1_norm(f.values(), f.grid().dx());
}

double l2_distance(const Field& f, const Field& g) {
    require_same_grid(f.grid(), g.grid(), "l2_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = f[i] - g[i];
        s += d * d;
    }
    return std::sqrt(f.grid().dx() * s);
}

double sup_t_l2_norm(const SpaceTimeField& u) {
    double m = 0.0;
    for (std::size_t n = 0; n < u.rows(); ++n) m = std::max(m, l2_norm(u.row(n), u.grid().dx()));
    return m;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (!(a == b)) detail::domain_fail(std::string(where) + ": grid mismatch");
}

}  // namespace smpde
