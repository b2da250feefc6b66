// SPDX-License-Identifier: Apache-2.0
#include "smpde/io.hpp"

#include <cstdio>
#include <fstream>

#include "binary_io.hpp"
#include "smpde/error.hpp"

namespace smpde {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    return is;
}

GridSpec grid_from_header(std::uint64_t nx, double dx, double x_min) {
    if (nx == 0 || !(dx > 0.0)) throw Error("binary read: bad field header");
    GridSpec g;
    g.nx = static_cast<std::size_t>(nx);
    g.x_min = x_min;
    g.x_max = x_min + dx * static_cast<double>(nx);
    return g;
}

}  // namespace

void save_field(const Field& f, const std::filesystem::path& path) {
    auto os = open_out(path);
    detail::put<std::uint64_t>(os, f.size());
    detail::put<double>(os, f.grid().dx());
    detail::put<double>(os, f.grid().x_min);
    detail::put_doubles(os, f.values());
    if (!os) throw Error("write failed: " + path.string());
}

Field load_field(const std::filesystem::path& path) {
    auto is = open_in(path);
    const auto nx = detail::get<std::uint64_t>(is);
    const double dx = detail::get<double>(is);
    const double x_min = detail::get<double>(is);
    const GridSpec g = grid_from_header(nx, dx, x_min);
    return Field(g, detail::get_doubles(is, g.nx));
}

void save_space_time(const SpaceTimeField& u, const std::filesystem::path& path) {
    auto os = open_out(path);
    const GridSpec& g = u.grid();
    detail::put<std::uint64_t>(os, g.nx);
    detail::put<double>(os, g.dx());
    detail::put<double>(os, g.x_min);
    detail::put<std::uint64_t>(os, u.rows());
    detail::put<double>(os, g.dt());
    detail::put_doubles(os, u.data());
    if (!os) throw Error("write failed: " + path.string());
}

SpaceTimeField load_space_time(const std::filesystem::path& path) {
    auto is = open_in(path);
    const auto nx = detail::get<std::uint64_t>(is);
    const double dx = detail::get<double>(is);
    const double x_min = detail::get<double>(is);
    const auto rows = detail::get<std::uint64_t>(is);
    const double dt = detail::get<double>(is);
    GridSpec g = grid_from_header(nx, dx, x_min);
    if (rows < 2 || !(dt > 0.0)) throw Error("binary read: bad space-time header");
    g.nt = static_cast<std::size_t>(rows - 1);
    g.t_max = dt * static_cast<double>(g.nt);
    return SpaceTimeField(g, detail::get_doubles(is, g.nx * static_cast<std::size_t>(rows)));
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw Error("write_csv: row width does not match the header");
        line(r);
    }
    if (!os) throw Error("write failed: " + path.string());
}

void save_field_csv(const Field& f, const std::filesystem::path& path) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) rows.push_back({format_real(f.grid().x(i)), format_real(f[i])});
    write_csv(path, {"x", "value"}, rows);
}

void save_slices_csv(const SpaceTimeField& u, const std::vector<std::size_t>& levels, const std::filesystem::path& path) {
    const GridSpec& g = u.grid();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n : levels) {
        if (n > g.nt) throw DomainError("save_slices_csv: time level outside the grid");
        const auto r = u.row(n);
        for (std::size_t i = 0; i < g.nx; ++i) rows.push_back({format_real(g.t(n)), format_real(g.x(i)), format_real(r[i])});
    }
    write_csv(path, {"t", "x", "value"}, rows);
}

}  // namespace smpde
