/**
 * Copyright 2026 The EventDrop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// Batch front end: augment / convert datasets, render previews, inspect
// streams and benchmark the kernels.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "eventdrop/bench.hpp"
#include "eventdrop/pipeline.hpp"
#include "eventdrop/preview.hpp"

namespace {

using namespace eventdrop;

constexpr int kExitOk = 0;
constexpr int kExitSampleFailed = 1;
constexpr int kExitConfigError = 2;

// Long-option flags shared by `augment` and `convert`; values are forwarded
// into Settings by name so config files and flags use identical keys.
struct RunFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;
  bool strict = false;
  bool preview = false;
  CLI::Option *strict_opt = nullptr;
  CLI::Option *preview_opt = nullptr;

  void add(CLI::App &app, bool with_k) {
    app.add_option("--config", config_file, "key = value settings file; flags override it");
    const std::pair<const char *, const char *> keys[] = {
        {"input", "dataset root"},
        {"output", "output root"},
        {"format", "input format: atis_bin | csv"},
        {"width", "sensor width in pixels"},
        {"height", "sensor height in pixels"},
        {"repr", "event_frame | event_count | voxel_grid | est"},
        {"bins", "time bins for voxel_grid / est"},
        {"seed", "master seed (falls back to EVENTDROP_SEED)"},
        {"policy", "op probabilities p_id,p_rand,p_time,p_area"},
        {"out-format", "etns | npy"},
        {"workers", "worker threads"},
        {"time-rule", "drop-by-time window end: clip | literal"},
        {"est-norm", "EST timestamp normalisation: bin | duration"},
    };
    for (const auto &[key, help] : keys) {
      options[key] = app.add_option(std::string("--") + key, values[key], help);
    }
    if (with_k) options["k"] = app.add_option("--k", values["k"], "augmentations per sample");
    strict_opt = app.add_flag("--strict", strict, "stop at the first failing sample");
    preview_opt = app.add_flag("--preview", preview, "write a PNG next to every tensor");
  }

  PipelineConfig resolve(bool convert_only) const {
    PipelineConfig cfg;
    Settings settings;
    if (const char *env = std::getenv("EVENTDROP_SEED"); env && *env) settings["seed"] = env;
    if (!config_file.empty()) {
      const Bytes text = read_file(config_file);
      for (auto &[k, v] : parse_config_text(
               std::string_view(reinterpret_cast<const char *>(text.data()), text.size()))) {
        settings[k] = v;
      }
    }
    for (const auto &[key, opt] : options) {
      if (opt->count() > 0) settings[key] = values.at(key);
    }
    if (strict_opt->count() > 0) settings["strict"] = strict ? "true" : "false";
    if (preview_opt->count() > 0) settings["preview"] = preview ? "true" : "false";
    if (convert_only) settings["k"] = "0";
    apply_settings(cfg, settings);
    return cfg;
  }
};

InputFormat guess_format(const std::string &path, const std::string &flag) {
  if (flag == "csv") return InputFormat::Csv;
  if (flag == "atis_bin" || flag == "bin") return InputFormat::AtisBin;
  if (!flag.empty()) throw Error(Errc::InvalidArgument, "unknown input format '" + flag + "'");
  return std::filesystem::path(path).extension() == ".csv" ? InputFormat::Csv : InputFormat::AtisBin;
}

int run_pipeline(const RunFlags &flags, bool convert_only) {
  PipelineConfig cfg;
  try {
    cfg = flags.resolve(convert_only);
    check_config(cfg);
  } catch (const std::exception &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  RunManifest manifest;
  try {
    manifest = run_dataset(cfg);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::InvalidArgument ? kExitConfigError : kExitSampleFailed;
  }
  std::cout << manifest.samples << " samples, " << manifest.entries.size() << " tensors written, "
            << manifest.failures.size() << " failures\n";
  for (const auto &f : manifest.failures) {
    std::cerr << "failed: " << f.input << " k=" << f.k << ": " << f.error << "\n";
  }
  return manifest.ok() ? kExitOk : kExitSampleFailed;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Event-stream augmentation (EventDrop) and tensor conversion"};
  app.require_subcommand(1);

  RunFlags augment_flags;
  CLI::App *augment = app.add_subcommand("augment", "augment every sample K times and write tensors");
  augment_flags.add(*augment, true);

  RunFlags convert_flags;
  CLI::App *convert = app.add_subcommand("convert", "write unaugmented tensors only (K = 0)");
  convert_flags.add(*convert, false);

  std::string preview_in, preview_out, preview_format, preview_repr = "event_count";
  std::uint32_t preview_width = 240, preview_height = 180, preview_bins = 9;
  CLI::App *preview = app.add_subcommand("preview", "render one sample as PNG");
  preview->add_option("--input", preview_in, "event file")->required();
  preview->add_option("--output", preview_out, "PNG path")->required();
  preview->add_option("--format", preview_format, "atis_bin | csv (default: by extension)");
  preview->add_option("--repr", preview_repr, "representation to render");
  preview->add_option("--bins", preview_bins, "time bins");
  preview->add_option("--width", preview_width, "sensor width");
  preview->add_option("--height", preview_height, "sensor height");

  std::vector<std::string> inspect_in;
  std::string inspect_format;
  std::uint32_t inspect_width = 240, inspect_height = 180;
  bool inspect_json = false;
  CLI::App *inspect = app.add_subcommand("inspect", "print stream statistics");
  inspect->add_option("--input", inspect_in, "event file(s)")->required();
  inspect->add_option("--format", inspect_format, "atis_bin | csv (default: by extension)");
  inspect->add_option("--width", inspect_width, "sensor width");
  inspect->add_option("--height", inspect_height, "sensor height");
  inspect->add_flag("--json", inspect_json, "one JSON object per file");

  BenchConfig bench_cfg;
  std::uint32_t bench_width = 240, bench_height = 180;
  bool bench_json = false;
  CLI::App *bench = app.add_subcommand("bench", "throughput of decode, drop and representation stages");
  bench->add_option("--events", bench_cfg.events, "synthetic events per stream");
  bench->add_option("--width", bench_width, "sensor width");
  bench->add_option("--height", bench_height, "sensor height");
  bench->add_option("--bins", bench_cfg.time_bins, "time bins");
  bench->add_option("--workers", bench_cfg.threads, "threads for the parallel rows (0: all cores)");
  bench->add_option("--repeats", bench_cfg.repeats, "best-of repeats");
  bench->add_option("--seed", bench_cfg.seed, "synthetic data seed");
  bench->add_flag("--json", bench_json, "JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (*augment) return run_pipeline(augment_flags, false);
  if (*convert) return run_pipeline(convert_flags, true);

  try {
    if (*preview) {
      const auto repr = representation_from_name(preview_repr);
      if (!repr) throw Error(Errc::InvalidArgument, "unknown representation '" + preview_repr + "'");
      const SensorGeometry geometry(preview_width, preview_height);
      const EventStream stream =
          load_sample(preview_in, guess_format(preview_in, preview_format), geometry);
      GridConfig grid;
      grid.time_bins = preview_bins;
      write_file(preview_out, render_preview(build_representation(stream, *repr, grid)));
      return kExitOk;
    }
    if (*inspect) {
      const SensorGeometry geometry(inspect_width, inspect_height);
      int status = kExitOk;
      for (const auto &path : inspect_in) {
        try {
          const StreamStats s = stream_stats(load_sample(path, guess_format(path, inspect_format), geometry));
          if (inspect_json) {
            nlohmann::ordered_json j = {{"path", path},           {"count", s.count},
                                        {"positive", s.positive_count}, {"negative", s.negative_count},
                                        {"t_first", s.t_first},   {"t_last", s.t_last},
                                        {"duration", s.duration}};
            std::cout << j.dump() << "\n";
          } else {
            std::cout << path << ": events=" << s.count << " positive=" << s.positive_count
                      << " negative=" << s.negative_count << " t_first=" << s.t_first
                      << " t_last=" << s.t_last << " duration_us=" << s.duration << "\n";
          }
        } catch (const Error &e) {
          std::cerr << path << ": " << e.what() << "\n";
          status = kExitSampleFailed;
        }
      }
      return status;
    }
    if (*bench) {
      bench_cfg.geometry = SensorGeometry(bench_width, bench_height);
      const BenchReport report = benchmark(bench_cfg);
      if (bench_json) {
        std::cout << report_to_json(report).dump(2) << "\n";
      } else {
        std::cout << format_report(report);
      }
      return kExitOk;
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::InvalidArgument || e.code() == Errc::InvalidGeometry ? kExitConfigError
                                                                                 : kExitSampleFailed;
  }
  return kExitConfigError;
}
