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

#include "litho/fab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "litho/errors.hpp"

namespace litho {

namespace {

// Unit prices and throughputs are back-derived from measured
// (quantity, cost, time) triples per printer; densities are material
// datasheet constants (PLA for the X1E, VeroBlack for the J835,
// Loctite 3843 for the M2).
constexpr char kBuiltinRegistry[] = R"(# Built-in printer profiles.
# Copy a section into your own file and pass it with --profiles-file to
# add printers without recompiling.

[bambu_x1e]
technology = FDM
quote_basis = per_gram
density_g_per_mm3 = 1.24e-3
unit_price = 0.020270270270270270
currency = USD
throughput_per_hour = 18.5
layer_height_mm = 0.12

[carbon_m2]
technology = SLA
quote_basis = per_milliliter
density_g_per_mm3 = 1.10e-3
unit_price = 0.24444444444444444
currency = USD
throughput_per_hour = 12.857142857142857
layer_height_mm = 0.1

[stratasys_j835]
technology = MJP
quote_basis = per_gram
density_g_per_mm3 = 1.18e-3
unit_price = 0.19512195121951220
currency = USD
throughput_per_hour = 94.615384615384615
layer_height_mm = 0.027
)";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Technology parse_technology(const std::string& s, const std::string& where) {
  if (s == "FDM") return Technology::FDM;
  if (s == "SLA") return Technology::SLA;
  if (s == "MJP") return Technology::MJP;
  throw ConfigError(where + ": unknown technology '" + s + "'");
}

QuoteBasis parse_basis(const std::string& s, const std::string& where) {
  if (s == "per_gram") return QuoteBasis::per_gram;
  if (s == "per_milliliter") return QuoteBasis::per_milliliter;
  throw ConfigError(where + ": unknown quote_basis '" + s + "'");
}

double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string to_string(Technology t) {
  switch (t) {
    case Technology::FDM: return "FDM";
    case Technology::SLA: return "SLA";
    case Technology::MJP: return "MJP";
  }
  return "?";
}

std::string to_string(QuoteBasis b) {
  return b == QuoteBasis::per_gram ? "per_gram" : "per_milliliter";
}

void PrinterProfile::validate() const {
  if (name.empty()) throw ConfigError("profile has no name");
  const auto positive = [&](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("profile '" + name + "': " + field +
                        " must be positive and finite");
  };
  positive(density_g_per_mm3, "density_g_per_mm3");
  positive(unit_price, "unit_price");
  positive(throughput_per_hour, "throughput_per_hour");
  positive(layer_height_mm, "layer_height_mm");
}

FabEstimate estimate(const TriMesh& m, const PrinterProfile& p) {
  p.validate();
  FabEstimate e;
  e.profile = p.name;
  e.volume_mm3 = signed_volume(m);
  e.basis = p.quote_basis;
  e.quantity = p.quote_basis == QuoteBasis::per_gram
                   ? e.volume_mm3 * p.density_g_per_mm3
                   : e.volume_mm3 / 1000.0;  // mm^3 -> mL
  e.cost = e.quantity * p.unit_price;
  e.currency = p.currency;
  e.hours = e.quantity / p.throughput_per_hour;
  return e;
}

std::vector<FabEstimate> rank_by_cost(const TriMesh& m,
                                      const std::vector<PrinterProfile>& ps) {
  std::vector<FabEstimate> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(estimate(m, p));
  std::sort(out.begin(), out.end(), [](const FabEstimate& a, const FabEstimate& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.profile < b.profile;
  });
  return out;
}

int solve_budget(int grid_cols, int grid_rows, std::uint64_t budget_bytes) {
  if (grid_cols < 2 || grid_rows < 2)
    throw ParameterOutOfRange("budget solving needs a grid of at least 2x2");
  const std::uint64_t max_triangles = triangle_budget_for_bytes(budget_bytes);
  for (int k = 1;; ++k) {
    const int w = (grid_cols + k - 1) / k;
    const int h = (grid_rows + k - 1) / k;
    if (w < 2 || h < 2)
      throw BudgetTooSmall("no downsample factor fits " +
                           std::to_string(budget_bytes) + " bytes");
    if (tessellation_triangle_count(w, h) <= max_triangles) return k;
  }
}

std::vector<PrinterProfile> parse_profile_registry(std::istream& in,
                                                   const std::string& source) {
  std::vector<PrinterProfile> profiles;
  PrinterProfile current;
  bool in_section = false;
  // Tracks which required keys the current section has set.
  unsigned seen = 0;
  constexpr unsigned kTechnology = 1, kBasis = 2, kDensity = 4, kPrice = 8,
                     kThroughput = 16, kLayer = 32;
  constexpr unsigned kAllRequired =
      kTechnology | kBasis | kDensity | kPrice | kThroughput | kLayer;

  int lineno = 0;
  const auto where = [&] { return source + ":" + std::to_string(lineno); };
  const auto finish_section = [&] {
    if (!in_section) return;
    if ((seen & kAllRequired) != kAllRequired)
      throw ConfigError(source + ": profile '" + current.name +
                        "' is missing required keys");
    current.validate();
    for (const auto& p : profiles)
      if (p.name == current.name)
        throw ConfigError(source + ": duplicate profile '" + current.name + "'");
    profiles.push_back(current);
  };

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(where() + ": unterminated section header");
      finish_section();
      current = PrinterProfile{};
      current.name = trim(line.substr(1, line.size() - 2));
      if (current.name.empty())
        throw ConfigError(where() + ": empty profile name");
      seen = 0;
      in_section = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where() + ": expected key = value");
    if (!in_section)
      throw ConfigError(where() + ": key outside a [profile] section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "technology") {
      current.technology = parse_technology(value, where());
      seen |= kTechnology;
    } else if (key == "quote_basis") {
      current.quote_basis = parse_basis(value, where());
      seen |= kBasis;
    } else if (key == "density_g_per_mm3") {
      current.density_g_per_mm3 = parse_number(value, where());
      seen |= kDensity;
    } else if (key == "unit_price") {
      current.unit_price = parse_number(value, where());
      seen |= kPrice;
    } else if (key == "currency") {
      current.currency = value;
    } else if (key == "throughput_per_hour") {
      current.throughput_per_hour = parse_number(value, where());
      seen |= kThroughput;
    } else if (key == "layer_height_mm") {
      current.layer_height_mm = parse_number(value, where());
      seen |= kLayer;
    } else {
      throw ConfigError(where() + ": unknown key '" + key + "'");
    }
  }
  finish_section();
  return profiles;
}

std::vector<PrinterProfile> load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open profile file " + path);
  return parse_profile_registry(in, path);
}

std::string builtin_profile_registry_text() { return kBuiltinRegistry; }

const std::vector<PrinterProfile>& builtin_profiles() {
  static const std::vector<PrinterProfile> profiles = [] {
    std::istringstream in(kBuiltinRegistry);
    return parse_profile_registry(in, "<builtin>");
  }();
  return profiles;
}

}  // namespace litho
