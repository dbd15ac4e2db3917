// Copyright 2026 The Lithoforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "litho/mesh.hpp"

namespace litho {

enum class Technology { FDM, SLA, MJP };
enum class QuoteBasis { per_gram, per_milliliter };

std::string to_string(Technology t);
std::string to_string(QuoteBasis b);

struct PrinterProfile {
  std::string name;
  Technology technology = Technology::FDM;
  QuoteBasis quote_basis = QuoteBasis::per_gram;
  double density_g_per_mm3 = 0.0;  // used when quoting grams from volume
  double unit_price = 0.0;         // currency per gram or per milliliter
  std::string currency = "USD";
  double throughput_per_hour = 0.0;  // grams or milliliters per hour
  double layer_height_mm = 0.0;      // informational

  void validate() const;
};

/// Model-material-only estimate; supports, infill and machine time are
/// deliberately out of the model.
struct FabEstimate {
  std::string profile;
  double volume_mm3 = 0.0;
  double quantity = 0.0;  // grams or milliliters, per the quote basis
  QuoteBasis basis = QuoteBasis::per_gram;
  double cost = 0.0;
  std::string currency;
  double hours = 0.0;
};

/// Volume from signed_volume (throws NotWatertight on open meshes), then
/// quantity = volume * density (per gram) or volume / 1000 (per mL),
/// cost = quantity * unit_price, hours = quantity / throughput.
FabEstimate estimate(const TriMesh& m, const PrinterProfile& p);

/// Estimates for every profile, ascending by cost; ties break by name.
std::vector<FabEstimate> rank_by_cost(const TriMesh& m,
                                      const std::vector<PrinterProfile>& ps);

/// Smallest integer k >= 1 such that the tessellation of the grid
/// downsampled by k fits the byte budget. Decimation may shrink the mesh
/// further but is not assumed. Throws BudgetTooSmall when no k leaves a
/// 2x2 grid within budget.
int solve_budget(int grid_cols, int grid_rows, std::uint64_t budget_bytes);

/// The three profiles measured in-house, parsed from the same registry
/// grammar as user files (see parse_profile_registry).
const std::vector<PrinterProfile>& builtin_profiles();

/// Registry text the built-ins are parsed from; also shipped as
/// share/printers.profiles.
std::string builtin_profile_registry_text();

/// Parses a profile registry: INI-style [name] sections with key=value
/// lines (technology, quote_basis, density_g_per_mm3, unit_price,
/// currency, throughput_per_hour, layer_height_mm). '#' starts a comment.
/// Throws ConfigError with the offending source/line on malformed input.
std::vector<PrinterProfile> parse_profile_registry(std::istream& in,
                                                   const std::string& source);

std::vector<PrinterProfile> load_profile_file(const std::string& path);

}  // namespace litho
