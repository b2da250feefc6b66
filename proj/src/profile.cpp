// SPDX-License-Identifier: Apache-2.0
#include "smpde/profile.hpp"

#include <algorithm>
#include <cmath>

#include "smpde/error.hpp"

namespace smpde {

Profile Profile::constant(double a) {
    Profile p;
    p.kind = Kind::constant;
    p.amplitude = a;
    return p;
}

Profile Profile::gaussian(double a, double w) {
    Profile p;
    p.kind = Kind::gaussian;
    p.amplitude = a;
    p.width = w;
    p.validate();
    return p;
}

Profile Profile::tabulated(double x0, double dx, std::vector<double> values) {
    Profile p;
    p.kind = Kind::table;
    p.table_x0 = x0;
    p.table_dx = dx;
    p.table = std::move(values);
    p.validate();
    return p;
}

double Profile::operator()(double y) const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::constant: return amplitude;
        case Kind::gaussian: {
            const double u = y / width;
            return amplitude * std::exp(-u * u);
        }
        case Kind::table: {
            const double pos = (y - table_x0) / table_dx;
            if (pos < 0.0) return 0.0;
            const auto i = static_cast<std::size_t>(pos);
            return i < table.size() ? table[i] : 0.0;
        }
    }
    return 0.0;
}

double Profile::sup_abs() const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::constant:
        case Kind::gaussian: return std::abs(amplitude);
        case Kind::table: {
            double m = 0.0;
            for (double v : table) m = std::max(m, std::abs(v));
            return m;
        }
    }
    return 0.0;
}

double Profile::lipschitz() const {
    switch (kind) {
        case Kind::zero:
        case Kind::constant: return 0.0;
        case Kind::gaussian: return std::abs(amplitude) * std::sqrt(2.0) * std::exp(-0.5) / width;
        case Kind::table: {
            double m = table.empty() ? 0.0 : std::max(std::abs(table.front()), std::abs(table.back()));
            for (std::size_t i = 1; i < table.size(); ++i) m = std::max(m, std::abs(table[i] - table[i - 1]));
            return m / table_dx;
        }
    }
    return 0.0;
}

bool Profile::is_zero() const {
    switch (kind) {
        case Kind::zero: return true;
        case Kind::constant:
        case Kind::gaussian: return amplitude == 0.0;
        case Kind::table: return std::all_of(table.begin(), table.end(), [](double v) { return v == 0.0; });
    }
    return true;
}

void Profile::validate() const {
    if (!std::isfinite(amplitude)) throw DomainError("profile: amplitude must be finite");
    if (kind == Kind::gaussian && !(width > 0.0)) throw DomainError("profile: gaussian width must be > 0");
    if (kind == Kind::table) {
        if (table.empty()) throw DomainError("profile: table is empty");
        if (!(table_dx > 0.0)) throw DomainError("profile: table spacing must be > 0");
        for (double v : table)
            if (!std::isfinite(v)) throw DomainError("profile: table entries must be finite");
    }
}

std::string to_string(Profile::Kind kind) {
    switch (kind) {
        case Profile::Kind::zero: return "zero";
        case Profile::Kind::constant: return "constant";
        case Profile::Kind::gaussian: return "gaussian";
        case Profile::Kind::table: return "table";
    }
    return "unknown";
}

Profile::Kind profile_kind_from_string(const std::string& name) {
    for (auto k : {Profile::Kind::zero, Profile::Kind::constant, Profile::Kind::gaussian, Profile::Kind::table})
        if (to_string(k) == name) return k;
    throw DomainError("profile kind '" + name + "' is not supported (zero | constant | gaussian | table)");
}

}  // namespace smpde
