// SPDX-License-Identifier: Apache-2.0
// Spatial profiles y -> c(y) used by coefficient specifications.
#pragma once

#include <string>
#include <vector>

namespace smpde {

/// zero | constant a | gaussian a exp(-(y/w)^2) | table (piecewise constant on
/// cells of width dx starting at x0, zero outside).
struct Profile {
    enum class Kind { zero, constant, gaussian, table };
    Kind kind = Kind::zero;
    double amplitude = 0.0;
    double width = 1.0;
    double table_x0 = 0.0;
    double table_dx = 1.0;
    std::vector<double> table;

    static Profile zero() { return {}; }
    static Profile constant(double a);
    static Profile gaussian(double a, double w);
    static Profile tabulated(double x0, double dx, std::vector<double> values);

    double operator()(double y) const;
    /// sup |c|
    double sup_abs() const;
    /// Lipschitz constant (tables: max jump over one cell, divided by dx)
    double lipschitz() const;
    bool is_zero() const;
    void validate() const;
};

std::string to_string(Profile::Kind kind);
Profile::Kind profile_kind_from_string(const std::string& name);

}  // namespace smpde
