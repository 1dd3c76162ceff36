// Copyright 2026 The LID Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string_view>

namespace lid::spatial {

inline constexpr double kSquareMetresPerAcre = 4046.8564224;
inline constexpr double kSquareMetresPerSquareMile = 2589988.110336;

inline double acres(double area_m2) { return area_m2 / kSquareMetresPerAcre; }

/// kTableNote multiplies people/m^2 by 1e6, as the published summary tables
/// do. The result is people per km^2 even though those tables label it per
/// square mile. kPerSquareMile gives true people per square mile.
enum class DensityUnit { kTableNote, kPerSquareMile };

std::optional<DensityUnit> parse_density_unit(std::string_view name);
std::string_view density_unit_name(DensityUnit unit);

/// nullopt marks a degenerate zone (zero land area with residents).
inline std::optional<double> population_density(double population, double land_area_m2,
                                                DensityUnit unit = DensityUnit::kTableNote) {
  if (population == 0.0) return 0.0;
  if (!(land_area_m2 > 0.0)) return std::nullopt;
  const double factor = unit == DensityUnit::kTableNote ? 1000000.0 : kSquareMetresPerSquareMile;
  return population / land_area_m2 * factor;
}

}  // namespace lid::spatial
