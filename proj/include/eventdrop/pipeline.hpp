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
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eventdrop/augment.hpp"
#include "eventdrop/codec.hpp"
#include "eventdrop/represent.hpp"
#include "eventdrop/synthetic.hpp"

namespace eventdrop {

std::string_view input_format_name(InputFormat format) noexcept;

struct PipelineConfig {
  std::filesystem::path input_root;
  std::filesystem::path output_root;
  InputFormat input_format = InputFormat::AtisBin;
  SensorGeometry geometry{240, 180};
  Representation repr = Representation::EventFrame;
  GridConfig grid;
  std::uint32_t k = 0;  // augmentations per sample; 0 converts only
  std::uint64_t seed = 0;
  AugmentPolicy policy = AugmentPolicy::uniform();
  TensorFormat out_format = TensorFormat::Native;
  bool preview = false;
  unsigned workers = 1;
  bool strict = false;
};

/// Settings keyed by long flag name without dashes, e.g. "out-format" -> "npy".
/// Underscores in keys are accepted as hyphens.
using Settings = std::map<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment, values may be quoted.
Settings parse_config_text(std::string_view text);
/// Applies settings on top of `cfg`. Throws InvalidArgument on unknown keys
/// or bad values.
void apply_settings(PipelineConfig &cfg, const Settings &settings);
/// Rejects configs that cannot run (missing roots, identical roots, ...).
void check_config(const PipelineConfig &cfg);

/// "p_id,p_rand,p_time,p_area".
AugmentPolicy parse_policy(std::string_view text);

/// Sample files under `root` with the format's extension, as sorted
/// generic relative paths.
std::vector<std::string> discover_samples(const std::filesystem::path &root, InputFormat format);

/// Relative output path for augmentation `k` (k = 0 is the unaugmented copy).
std::string output_name(std::string_view sample, std::uint32_t k, TensorFormat format);

EventStream load_sample(const std::filesystem::path &path, InputFormat format,
                        SensorGeometry geometry);

struct ManifestEntry {
  std::string input;
  std::uint32_t k = 0;
  std::optional<AppliedOpRecord> op;  // absent for k = 0
  std::string output;
  std::optional<std::string> preview;
  std::uint64_t events_before = 0;
  std::uint64_t events_after = 0;
};

struct SampleFailure {
  std::string input;
  std::uint32_t k = 0;
  std::string error;
};

struct RunManifest {
  std::size_t samples = 0;
  std::vector<ManifestEntry> entries;
  std::vector<SampleFailure> failures;
  bool aborted = false;

  bool ok() const noexcept { return failures.empty() && !aborted; }
};

/// Everything needed to reproduce the run apart from the two root paths and
/// the worker count (neither of which affects output bytes).
nlohmann::ordered_json config_to_json(const PipelineConfig &cfg);
PipelineConfig config_from_json(const nlohmann::ordered_json &json);
nlohmann::ordered_json manifest_to_json(const PipelineConfig &cfg, const RunManifest &manifest);

inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr std::string_view kAuditFile = "audit.jsonl";

/// Processes every sample: one unaugmented tensor plus `k` augmented ones,
/// seeded by derive_seed(seed, sample, k). Writes tensors (and previews) under
/// the output root mirroring the input tree, then the manifest and audit log.
/// Failures are recorded per tensor; with `strict` the run stops dispatching
/// new samples after the first one.
RunManifest run_dataset(const PipelineConfig &cfg);

/// Re-creates the tensor bytes of manifest entry `index` from the manifest
/// and the input tree alone. Throws InvalidArgument if the replayed op record
/// differs from the stored one.
Bytes replay_entry(const nlohmann::ordered_json &manifest, std::size_t index,
                   const std::filesystem::path &input_root);

}  // namespace eventdrop
