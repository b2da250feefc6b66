// SPDX-License-Identifier: Apache-2.0
// Field persistence. Binary layouts are little-endian:
//   Field:          [u64 nx][f64 dx][f64 x_min][nx x f64]
//   SpaceTimeField: [u64 nx][f64 dx][f64 x_min][u64 rows][f64 dt][rows x nx x f64]
// CSV files carry a header row and print reals with %.17g.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smpde/grid.hpp"

namespace smpde {

void save_field(const Field& f, const std::filesystem::path& path);
/// The time fields of the returned grid are defaults.
Field load_field(const std::filesystem::path& path);

void save_space_time(const SpaceTimeField& u, const std::filesystem::path& path);
SpaceTimeField load_space_time(const std::filesystem::path& path);

/// columns: x, value
void save_field_csv(const Field& f, const std::filesystem::path& path);
/// columns: t, x, value for the requested time levels
void save_slices_csv(const SpaceTimeField& u, const std::vector<std::size_t>& levels, const std::filesystem::path& path);

/// %.17g
std::string format_real(double v);

/// Writes a header row and then one row per entry; every row must match the header width.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace smpde
