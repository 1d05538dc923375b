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
#include "eventdrop/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <thread>

#include "eventdrop/preview.hpp"

namespace eventdrop {
namespace fs = std::filesystem;
namespace {

std::string_view trim(std::string_view s) {
  const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  text = trim(text);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::InvalidArgument, "bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error(Errc::InvalidArgument, "bad boolean '" + std::string(text) + "' for " + std::string(key));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string_view extension(InputFormat format) { return format == InputFormat::AtisBin ? ".bin" : ".csv"; }

InputFormat parse_input_format(std::string_view text) {
  if (text == "atis_bin" || text == "bin") return InputFormat::AtisBin;
  if (text == "csv") return InputFormat::Csv;
  throw Error(Errc::InvalidArgument, "unknown input format '" + std::string(text) + "'");
}

TensorFormat parse_tensor_format(std::string_view text) {
  if (text == "etns" || text == "native") return TensorFormat::Native;
  if (text == "npy") return TensorFormat::Npy;
  throw Error(Errc::InvalidArgument, "unknown output format '" + std::string(text) + "'");
}

std::string_view tensor_format_name(TensorFormat f) { return f == TensorFormat::Native ? "etns" : "npy"; }

Representation parse_repr(std::string_view text) {
  if (auto r = representation_from_name(text)) return *r;
  throw Error(Errc::InvalidArgument, "unknown representation '" + std::string(text) + "'");
}

TimeWindowRule parse_time_rule(std::string_view text) {
  if (text == "clip") return TimeWindowRule::Clip;
  if (text == "literal") return TimeWindowRule::Literal;
  throw Error(Errc::InvalidArgument, "unknown time rule '" + std::string(text) + "'");
}

EstNormalization parse_est_norm(std::string_view text) {
  if (text == "bin") return EstNormalization::BinSize;
  if (text == "duration") return EstNormalization::Duration;
  throw Error(Errc::InvalidArgument, "unknown EST normalisation '" + std::string(text) + "'");
}

// Produces the bytes for one (sample, k) pair; shared by run_dataset and replay.
struct Variant {
  ManifestEntry entry;
  Bytes tensor;
  std::optional<Bytes> preview;
};

Variant make_variant(const PipelineConfig &cfg, const EventStream &stream, const std::string &sample,
                     std::uint32_t k, std::optional<std::uint64_t> seed_override = std::nullopt) {
  Variant v;
  v.entry.input = sample;
  v.entry.k = k;
  v.entry.output = output_name(sample, k, cfg.out_format);
  v.entry.events_before = stream.size();
  TensorGrid grid = [&] {
    if (k == 0) return build_representation(stream, cfg.repr, cfg.grid);
    RngState rng(seed_override.value_or(derive_seed_value(cfg.seed, sample, k)));
    AugmentResult aug = apply_policy(stream, cfg.policy, rng);
    v.entry.op = aug.record;
    return build_representation(aug.stream, cfg.repr, cfg.grid);
  }();
  v.entry.events_after = v.entry.op ? v.entry.op->events_after : stream.size();
  v.tensor = write_tensor(grid, cfg.out_format);
  if (cfg.preview) {
    fs::path png = fs::path(v.entry.output).replace_extension(".png");
    v.entry.preview = png.generic_string();
    v.preview = render_preview(grid);
  }
  return v;
}

nlohmann::ordered_json entry_to_json(const ManifestEntry &e) {
  nlohmann::ordered_json j;
  j["input"] = e.input;
  j["k"] = e.k;
  j["output"] = e.output;
  j["preview"] = e.preview ? nlohmann::ordered_json(*e.preview) : nlohmann::ordered_json(nullptr);
  j["events_before"] = e.events_before;
  j["events_after"] = e.events_after;
  j["op"] = e.op ? to_json(*e.op) : nlohmann::ordered_json(nullptr);
  return j;
}

void write_text(const fs::path &path, const std::string &text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

struct SampleOutcome {
  std::vector<ManifestEntry> entries;
  std::vector<SampleFailure> failures;
};

SampleOutcome process_sample(const PipelineConfig &cfg, const std::string &sample) {
  SampleOutcome out;
  std::optional<EventStream> stream;
  try {
    stream = load_sample(cfg.input_root / sample, cfg.input_format, cfg.geometry);
  } catch (const std::exception &e) {
    for (std::uint32_t k = 0; k <= cfg.k; ++k) out.failures.push_back({sample, k, e.what()});
    return out;
  }
  for (std::uint32_t k = 0; k <= cfg.k; ++k) {
    try {
      Variant v = make_variant(cfg, *stream, sample, k);
      write_file(cfg.output_root / v.entry.output, v.tensor);
      if (v.preview) write_file(cfg.output_root / *v.entry.preview, *v.preview);
      out.entries.push_back(std::move(v.entry));
    } catch (const std::exception &e) {
      out.failures.push_back({sample, k, e.what()});
    }
  }
  return out;
}

}  // namespace

std::string_view input_format_name(InputFormat format) noexcept {
  return format == InputFormat::AtisBin ? "atis_bin" : "csv";
}

Settings parse_config_text(std::string_view text) {
  Settings settings;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    settings[normalize_key(std::string(key))] = std::string(value);
  }
  return settings;
}

AugmentPolicy parse_policy(std::string_view text) {
  std::array<double, 4> p{};
  std::size_t n = 0;
  while (true) {
    const std::size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (n == 4) throw Error(Errc::InvalidArgument, "policy takes exactly four probabilities");
    p[n++] = parse_number<double>("policy", item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (n != 4) throw Error(Errc::InvalidArgument, "policy takes exactly four probabilities");
  return AugmentPolicy(p);
}

void apply_settings(PipelineConfig &cfg, const Settings &settings) {
  std::optional<std::uint32_t> width;
  std::optional<std::uint32_t> height;
  for (const auto &[raw_key, value] : settings) {
    const std::string key = normalize_key(raw_key);
    if (key == "input") {
      cfg.input_root = value;
    } else if (key == "output") {
      cfg.output_root = value;
    } else if (key == "format") {
      cfg.input_format = parse_input_format(value);
    } else if (key == "width") {
      width = parse_number<std::uint32_t>(key, value);
    } else if (key == "height") {
      height = parse_number<std::uint32_t>(key, value);
    } else if (key == "repr") {
      cfg.repr = parse_repr(value);
    } else if (key == "bins") {
      cfg.grid.time_bins = parse_number<std::uint32_t>(key, value);
      if (cfg.grid.time_bins < 1) throw Error(Errc::InvalidArgument, "bins must be >= 1");
    } else if (key == "est-norm") {
      cfg.grid.est_normalization = parse_est_norm(value);
    } else if (key == "k") {
      cfg.k = parse_number<std::uint32_t>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "policy") {
      const TimeWindowRule rule = cfg.policy.time_rule;
      cfg.policy = parse_policy(value);
      cfg.policy.time_rule = rule;
    } else if (key == "time-rule") {
      cfg.policy.time_rule = parse_time_rule(value);
    } else if (key == "out-format") {
      cfg.out_format = parse_tensor_format(value);
    } else if (key == "preview") {
      cfg.preview = parse_bool(key, value);
    } else if (key == "strict") {
      cfg.strict = parse_bool(key, value);
    } else if (key == "workers") {
      cfg.workers = parse_number<unsigned>(key, value);
      if (cfg.workers < 1) throw Error(Errc::InvalidArgument, "workers must be >= 1");
    } else {
      throw Error(Errc::InvalidArgument, "unknown setting '" + key + "'");
    }
  }
  if (width || height) {
    cfg.geometry = SensorGeometry(width.value_or(cfg.geometry.width()),
                                  height.value_or(cfg.geometry.height()));
  }
}

void check_config(const PipelineConfig &cfg) {
  if (cfg.input_root.empty()) throw Error(Errc::InvalidArgument, "no input root");
  if (cfg.output_root.empty()) throw Error(Errc::InvalidArgument, "no output root");
  if (!fs::is_directory(cfg.input_root)) {
    throw Error(Errc::InvalidArgument, "input root " + cfg.input_root.string() + " is not a directory");
  }
  if (fs::weakly_canonical(cfg.input_root) == fs::weakly_canonical(cfg.output_root)) {
    throw Error(Errc::InvalidArgument, "input and output roots must differ");
  }
  if (cfg.workers < 1) throw Error(Errc::InvalidArgument, "workers must be >= 1");
}

std::vector<std::string> discover_samples(const fs::path &root, InputFormat format) {
  std::vector<std::string> samples;
  for (const auto &entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == extension(format)) {
      samples.push_back(fs::relative(entry.path(), root).generic_string());
    }
  }
  std::sort(samples.begin(), samples.end());
  return samples;
}

std::string output_name(std::string_view sample, std::uint32_t k, TensorFormat format) {
  fs::path p{std::string(sample)};
  std::string stem = p.stem().string();
  if (k > 0) stem += "_aug" + std::to_string(k);
  stem += format == TensorFormat::Native ? ".etns" : ".npy";
  return (p.parent_path() / stem).generic_string();
}

EventStream load_sample(const fs::path &path, InputFormat format, SensorGeometry geometry) {
  const Bytes bytes = read_file(path);
  if (format == InputFormat::AtisBin) return read_atis_bin(bytes, geometry);
  return read_csv(std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()),
                  geometry);
}

nlohmann::ordered_json config_to_json(const PipelineConfig &cfg) {
  nlohmann::ordered_json j;
  j["format"] = input_format_name(cfg.input_format);
  j["width"] = cfg.geometry.width();
  j["height"] = cfg.geometry.height();
  j["repr"] = representation_name(cfg.repr);
  j["bins"] = cfg.grid.time_bins;
  j["est_norm"] = cfg.grid.est_normalization == EstNormalization::BinSize ? "bin" : "duration";
  j["k"] = cfg.k;
  j["seed"] = cfg.seed;
  j["policy"] = cfg.policy.probabilities();
  j["time_rule"] = cfg.policy.time_rule == TimeWindowRule::Clip ? "clip" : "literal";
  j["out_format"] = tensor_format_name(cfg.out_format);
  j["preview"] = cfg.preview;
  return j;
}

PipelineConfig config_from_json(const nlohmann::ordered_json &j) {
  try {
    PipelineConfig cfg;
    cfg.input_format = parse_input_format(j.at("format").get<std::string>());
    cfg.geometry = SensorGeometry(j.at("width").get<std::uint32_t>(), j.at("height").get<std::uint32_t>());
    cfg.repr = parse_repr(j.at("repr").get<std::string>());
    cfg.grid.time_bins = j.at("bins").get<std::uint32_t>();
    cfg.grid.est_normalization = parse_est_norm(j.at("est_norm").get<std::string>());
    cfg.k = j.at("k").get<std::uint32_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.policy = AugmentPolicy(j.at("policy").get<std::array<double, 4>>());
    cfg.policy.time_rule = parse_time_rule(j.at("time_rule").get<std::string>());
    cfg.out_format = parse_tensor_format(j.at("out_format").get<std::string>());
    cfg.preview = j.at("preview").get<bool>();
    return cfg;
  } catch (const nlohmann::json::exception &e) {
    throw Error(Errc::InvalidArgument, std::string("malformed run config: ") + e.what());
  }
}

nlohmann::ordered_json manifest_to_json(const PipelineConfig &cfg, const RunManifest &m) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["config"] = config_to_json(cfg);
  j["samples"] = m.samples;
  j["aborted"] = m.aborted;
  auto &entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto &e : m.entries) entries.push_back(entry_to_json(e));
  auto &failures = j["failures"] = nlohmann::ordered_json::array();
  for (const auto &f : m.failures) {
    failures.push_back({{"input", f.input}, {"k", f.k}, {"error", f.error}});
  }
  return j;
}

RunManifest run_dataset(const PipelineConfig &cfg) {
  check_config(cfg);
  const std::vector<std::string> samples = discover_samples(cfg.input_root, cfg.input_format);
  if (samples.empty()) {
    throw Error(Errc::InvalidArgument, "no " + std::string(extension(cfg.input_format)) +
                                           " samples under " + cfg.input_root.string());
  }
  fs::create_directories(cfg.output_root);

  std::vector<std::optional<SampleOutcome>> outcomes(samples.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  const auto work = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= samples.size()) return;
      outcomes[i] = process_sample(cfg, samples[i]);
      if (cfg.strict && !outcomes[i]->failures.empty()) stop = true;
    }
  };
  {
    const unsigned n = std::min<std::size_t>(cfg.workers, samples.size());
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
    work();
  }

  RunManifest manifest;
  manifest.samples = samples.size();
  manifest.aborted = stop.load();
  for (auto &outcome : outcomes) {
    if (!outcome) continue;
    for (auto &e : outcome->entries) manifest.entries.push_back(std::move(e));
    for (auto &f : outcome->failures) manifest.failures.push_back(std::move(f));
  }

  write_text(cfg.output_root / kManifestFile, manifest_to_json(cfg, manifest).dump(2) + "\n");
  std::string audit;
  for (const auto &e : manifest.entries) {
    if (!e.op) continue;
    nlohmann::ordered_json line;
    line["input"] = e.input;
    line["k"] = e.k;
    const nlohmann::ordered_json record = to_json(*e.op);
    for (const auto &[key, value] : record.items()) line[key] = value;
    audit += line.dump() + "\n";
  }
  write_text(cfg.output_root / kAuditFile, audit);
  return manifest;
}

Bytes replay_entry(const nlohmann::ordered_json &manifest, std::size_t index,
                   const fs::path &input_root) {
  const PipelineConfig cfg = config_from_json(manifest.at("config"));
  const auto &entries = manifest.at("entries");
  if (index >= entries.size()) throw Error(Errc::InvalidArgument, "no manifest entry " + std::to_string(index));
  const auto &entry = entries[index];
  const std::string sample = entry.at("input").get<std::string>();
  const auto k = entry.at("k").get<std::uint32_t>();
  const EventStream stream = load_sample(input_root / sample, cfg.input_format, cfg.geometry);

  std::optional<std::uint64_t> seed;
  if (!entry.at("op").is_null()) seed = entry["op"].at("seed").get<std::uint64_t>();
  if (k > 0 && !seed) throw Error(Errc::InvalidArgument, "augmented entry without op record");
  const Variant v = make_variant(cfg, stream, sample, k, seed);
  if (v.entry.op && to_json(*v.entry.op) != entry["op"]) {
    throw Error(Errc::InvalidArgument, "replayed op record differs from manifest");
  }
  return v.tensor;
}

}  // namespace eventdrop
