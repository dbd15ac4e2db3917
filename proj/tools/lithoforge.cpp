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

//
// lithoforge: turn micrographs into 3D-printable tactile lithograph
// plates (binary STL) under a byte budget, with print-cost estimates.
//
// Exit codes: 0 success, 2 bad configuration or unknown profile,
// 3 unreadable or malformed files, 4 byte budget unreachable.

#include <cstdio>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "litho/errors.hpp"
#include "litho/parallel.hpp"
#include "litho/pipeline.hpp"
#include "litho/stl.hpp"

namespace {

constexpr int kExitBadConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitBudget = 4;

// Maps "[section] key = value" in a config file onto the dotted long
// option "--section.key" (CLI11 itself only matches sections against
// subcommand names).
class SectionedConfig : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigBase::from_config(input);
    std::vector<CLI::ConfigItem> out;
    for (CLI::ConfigItem& item : items) {
      if (item.name == "++" || item.name == "--") continue;  // section marks
      for (auto it = item.parents.rbegin(); it != item.parents.rend(); ++it)
        item.name = *it + "." + item.name;
      item.parents.clear();
      out.push_back(std::move(item));
    }
    return out;
  }
};

// Raw option values shared by convert/preview/estimate; turned into a
// JobConfig after parsing so config-file values and flags merge first
// (command-line flags win over same-named config keys).
struct RawJob {
  std::vector<std::string> inputs;
  std::string output;
  double um_per_px = 0.0;

  std::string chain;
  double blur_sigma = 0.0;
  bool fine_detail = false;
  double brightness = 0.0;
  double contrast = 1.0;
  double gamma_value = 1.0;
  int posterize_levels = 0;
  bool invert_on = false;

  std::string mode = "external";
  litho::ReliefParams relief;

  std::uint64_t budget_bytes = 100'000'000;
  bool no_decimate = false;
  double eps_mm = 0.0;

  litho::LayoutConfig layout;
  double frame_width_mm = 2.0;
  double frame_height_mm = 1.5;
};

void add_job_options(CLI::App& app, RawJob& raw) {
  app.add_option("-i,--input,--job.input", raw.inputs,
                 "input image(s), PNG or JPEG; repeat for multi-panel plates");
  app.add_option("-o,--output,--job.output", raw.output,
                 "output STL path (previews derive their names from it)");
  app.add_option("--um-per-px,--job.um_per_px", raw.um_per_px,
                 "specimen micrometers per source pixel (enables scale bars)");

  app.add_option("--filter-chain,--filters.chain", raw.chain,
                 "ordered filters, e.g. 'blur:1.0,posterize:8,invert'; "
                 "overrides the individual filter options");
  app.add_option("--blur-sigma,--filters.blur_sigma", raw.blur_sigma,
                 "Gaussian blur sigma in pixels (0 = off)");
  app.add_flag("--fine-detail,--filters.fine_detail", raw.fine_detail,
               "apply the sigma 1.0 blur recommended for 1-2 px detail");
  app.add_option("--brightness,--filters.brightness", raw.brightness,
                 "brightness shift in [-1, 1]");
  app.add_option("--contrast,--filters.contrast", raw.contrast,
                 "contrast factor >= 0 (1 = unchanged)");
  app.add_option("--gamma,--filters.gamma", raw.gamma_value,
                 "gamma exponent > 0 (1 = unchanged)");
  app.add_option("--posterize,--filters.posterize", raw.posterize_levels,
                 "quantize to N >= 2 intensity levels (0 = off)");
  app.add_flag("--invert,--filters.invert", raw.invert_on,
               "invert intensities (inverse LUT)");

  app.add_option("--mode,--relief.mode", raw.mode,
                 "relief mode: external (bright = tall) or internal")
      ->check(CLI::IsMember({"external", "internal"}));
  app.add_option("--base-mm,--relief.base_mm", raw.relief.base_mm,
                 "solid base plate thickness in mm");
  app.add_option("--relief-mm,--relief.relief_mm", raw.relief.relief_mm,
                 "maximum relief above the base in mm");
  app.add_option("--width-mm,--relief.width_mm", raw.relief.target_width_mm,
                 "printed width of each panel in mm");

  app.add_option("--budget,--mesh.budget_bytes", raw.budget_bytes,
                 "output byte budget (default 100000000 = 100 MB decimal)");
  app.add_flag("--no-decimate,--mesh.no_decimate", raw.no_decimate,
               "skip planar decimation");
  app.add_option("--eps-mm,--mesh.eps_mm", raw.eps_mm,
                 "decimation tolerance in mm; 0 keeps geometry exact, "
                 "larger values alter it");

  app.add_option("--grid-cols,--layout.grid_cols", raw.layout.grid_cols,
                 "panels per plate row (0 = all in one row)");
  app.add_option("--gutter-mm,--layout.gutter_mm", raw.layout.gutter_mm,
                 "gap between panels in mm");
  app.add_flag("--frame,--layout.frame", raw.layout.frame_on,
               "raise a tactile frame ring around the plate");
  app.add_option("--frame-width-mm,--layout.frame_width_mm",
                 raw.frame_width_mm, "frame ring width in mm");
  app.add_option("--frame-height-mm,--layout.frame_height_mm",
                 raw.frame_height_mm,
                 "frame ring height in mm (clamped to the relief)");
  app.add_option("--scale-bar-um,--layout.scale_bar_um",
                 raw.layout.scale_bar_um,
                 "emboss a bar for this many specimen micrometers");
  app.add_option("--bar-thickness-mm,--layout.bar_thickness_mm",
                 raw.layout.bar_thickness_mm, "scale bar stroke width in mm");
  app.add_option("--bar-margin-mm,--layout.bar_margin_mm",
                 raw.layout.bar_margin_mm,
                 "height of the strip below the panels holding the bar");
}

litho::JobConfig make_config(const RawJob& raw) {
  litho::JobConfig cfg;
  cfg.inputs = raw.inputs;
  cfg.output = raw.output;
  if (raw.um_per_px != 0.0) cfg.micrometers_per_pixel = raw.um_per_px;

  if (!raw.chain.empty()) {
    cfg.filters = litho::parse_filter_chain(raw.chain);
  } else {
    // Canonical order: blur, brightness/contrast, gamma, posterize, invert.
    if (raw.blur_sigma > 0.0)
      cfg.filters.push_back({litho::FilterKind::blur, raw.blur_sigma});
    else if (raw.fine_detail)
      cfg.filters.push_back({litho::FilterKind::blur, 1.0});
    if (raw.brightness != 0.0 || raw.contrast != 1.0)
      cfg.filters.push_back({litho::FilterKind::brightness_contrast,
                             raw.brightness, raw.contrast});
    if (raw.gamma_value != 1.0)
      cfg.filters.push_back({litho::FilterKind::gamma, raw.gamma_value});
    if (raw.posterize_levels != 0)
      cfg.filters.push_back({litho::FilterKind::posterize,
                             static_cast<double>(raw.posterize_levels)});
    if (raw.invert_on) cfg.filters.push_back({litho::FilterKind::invert});
  }

  cfg.relief = raw.relief;
  cfg.relief.mode = raw.mode == "internal" ? litho::ReliefMode::internal
                                           : litho::ReliefMode::external;
  cfg.budget_bytes = raw.budget_bytes;
  cfg.decimate_enabled = !raw.no_decimate;
  cfg.decimate_eps_mm = raw.eps_mm;
  cfg.layout = raw.layout;
  cfg.layout.frame = litho::FrameSpec{raw.frame_width_mm, raw.frame_height_mm};
  return cfg;
}

std::vector<litho::PrinterProfile> profile_pool(const std::string& user_file) {
  std::vector<litho::PrinterProfile> pool = litho::builtin_profiles();
  if (!user_file.empty()) {
    std::vector<litho::PrinterProfile> extra;
    try {
      extra = litho::load_profile_file(user_file);
    } catch (const litho::ConfigError& e) {
      // A broken data file is an input problem, not a usage problem.
      throw litho::MalformedFile(e.what());
    }
    for (auto& p : extra) {
      for (const auto& b : pool)
        if (b.name == p.name)
          throw litho::MalformedFile(user_file + ": profile '" + p.name +
                                     "' shadows a built-in");
      pool.push_back(std::move(p));
    }
  }
  return pool;
}

void print_estimate_table(const std::vector<litho::FabEstimate>& rows) {
  std::printf("%-16s %14s %12s %10s %8s\n", "profile", "volume mm^3",
              "quantity", "cost", "hours");
  for (const auto& e : rows) {
    const char* unit = e.basis == litho::QuoteBasis::per_gram ? "g" : "mL";
    std::printf("%-16s %14.1f %9.2f %2s %7.2f %s %7.2f\n", e.profile.c_str(),
                e.volume_mm3, e.quantity, unit, e.cost, e.currency.c_str(),
                e.hours);
  }
  std::printf("(model material only; supports and infill not modeled)\n");
}

nlohmann::json estimates_to_json(const std::vector<litho::FabEstimate>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : rows) {
    arr.push_back({{"profile", e.profile},
                   {"volume_mm3", e.volume_mm3},
                   {"quantity", e.quantity},
                   {"unit", e.basis == litho::QuoteBasis::per_gram ? "g" : "mL"},
                   {"cost", e.cost},
                   {"currency", e.currency},
                   {"hours", e.hours}});
  }
  return {{"schema_version", 1},
          {"note", "model material only; supports and infill not modeled"},
          {"estimates", arr}};
}

int dispatch(int argc, char** argv) {
  CLI::App app{"lithoforge: micrographs to 3D-printable tactile lithographs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "job configuration file (INI sections)");
  app.config_formatter(std::make_shared<SectionedConfig>());

  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = hardware); outputs are identical for "
                 "any setting")
      ->envname("LITHOFORGE_THREADS");

  // The job surface is shared by convert/preview/estimate, so the options
  // (and the config file that fills them) live on the root app.
  RawJob raw;
  add_job_options(app, raw);

  auto* convert = app.add_subcommand(
      "convert", "build a plate mesh and write a binary STL");
  auto* preview = app.add_subcommand(
      "preview", "write heightmap and hillshade PNGs, no mesh");

  auto* estimate = app.add_subcommand(
      "estimate", "cost/mass/time per printer for an STL or a job config");
  std::string estimate_stl;
  std::vector<std::string> estimate_names;
  std::string profiles_file;
  bool as_json = false;
  estimate->add_option("stl", estimate_stl,
                       "binary STL to estimate (omit to build from the job "
                       "options/config)");
  estimate->add_option("-p,--profile", estimate_names,
                       "profile name(s); default: all known profiles");
  estimate->add_option("--profiles-file", profiles_file,
                       "extra profile registry file");
  estimate->add_flag("--json", as_json, "machine-readable output");

  auto* profiles_cmd = app.add_subcommand("profiles", "list printer profiles");
  std::string profiles_file2;
  profiles_cmd->add_option("--profiles-file", profiles_file2,
                           "extra profile registry file");

  app.parse(argc, argv);
  litho::set_thread_count(threads);

  if (convert->parsed()) {
    const litho::ConvertSummary summary = litho::run_convert(make_config(raw));
    std::cout << summary.to_json() << "\n";
    return 0;
  }

  if (preview->parsed()) {
    const litho::PreviewPaths paths = litho::run_preview(make_config(raw));
    nlohmann::json j{{"schema_version", 1},
                     {"heightmap", paths.heightmap},
                     {"hillshade", paths.hillshade}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (estimate->parsed()) {
    const auto pool = profile_pool(profiles_file);
    litho::TriMesh mesh;
    if (!estimate_stl.empty())
      mesh = litho::read_binary_file(estimate_stl);
    else if (!raw.inputs.empty())
      mesh = litho::build_mesh(make_config(raw)).mesh;
    else
      throw litho::ConfigError(
          "estimate needs an STL path or --input/--config");
    const auto rows = litho::run_estimate(mesh, estimate_names, pool);
    if (as_json)
      std::cout << estimates_to_json(rows).dump(2) << "\n";
    else
      print_estimate_table(rows);
    return 0;
  }

  if (profiles_cmd->parsed()) {
    const auto pool = profile_pool(profiles_file2);
    std::printf("%-16s %5s %-14s %14s %12s %12s %10s\n", "name", "tech",
                "quote", "density g/mm3", "unit price", "per hour",
                "layer mm");
    for (const auto& p : pool)
      std::printf("%-16s %5s %-14s %14g %12.6f %12.4f %10g\n", p.name.c_str(),
                  litho::to_string(p.technology).c_str(),
                  litho::to_string(p.quote_basis).c_str(), p.density_g_per_mm3,
                  p.unit_price, p.throughput_per_hour, p.layer_height_mm);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CLI::ParseError& e) {
    CLI::App dummy;
    const int code = dummy.exit(e);
    return code == 0 ? 0 : kExitBadConfig;
  } catch (const litho::BudgetTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const litho::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const litho::ParameterOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const litho::Error& e) {
    // Everything else the library throws is a file/data problem.
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
