#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "eventdrop/bench.hpp"
#include "eventdrop/pipeline.hpp"
#include "eventdrop/preview.hpp"
#include "reference.hpp"

namespace eventdrop {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("eventdrop_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::map<std::string, Bytes> snapshot(const fs::path &root) {
  std::map<std::string, Bytes> files;
  for (const auto &e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return files;
}

PipelineConfig small_config(const fs::path &in, const fs::path &out) {
  PipelineConfig cfg;
  cfg.input_root = in;
  cfg.output_root = out;
  cfg.geometry = SensorGeometry(64, 48);
  cfg.k = 3;
  cfg.seed = 99;
  return cfg;
}

// Decodes the IHDR and raw pixel rows of a PNG produced by render_preview.
struct DecodedPng {
  std::uint32_t width = 0, height = 0;
  int channels = 0;
  Bytes pixels;
};

DecodedPng decode_png(const Bytes &png);

TEST(Config, ParsesKeyValueText) {
  const Settings s = parse_config_text("# comment\nrepr = est\nout_format = \"npy\"\n\nbins=5 # trailing\n");
  EXPECT_EQ(s.at("repr"), "est");
  EXPECT_EQ(s.at("out-format"), "npy");
  EXPECT_EQ(s.at("bins"), "5");
  EXPECT_THROW(parse_config_text("just words\n"), ParseError);
}

TEST(Config, AppliesSettingsAndRejectsUnknown) {
  PipelineConfig cfg;
  apply_settings(cfg, {{"repr", "voxel_grid"}, {"bins", "4"}, {"k", "2"}, {"policy", "0,0,1,0"},
                       {"width", "128"}, {"time-rule", "literal"}, {"out_format", "npy"}});
  EXPECT_EQ(cfg.repr, Representation::VoxelGrid);
  EXPECT_EQ(cfg.grid.time_bins, 4u);
  EXPECT_EQ(cfg.k, 2u);
  EXPECT_EQ(cfg.policy.probability(DropOp::DropByTime), 1.0);
  EXPECT_EQ(cfg.policy.time_rule, TimeWindowRule::Literal);
  EXPECT_EQ(cfg.geometry.width(), 128u);
  EXPECT_EQ(cfg.geometry.height(), 180u);
  EXPECT_EQ(cfg.out_format, TensorFormat::Npy);
  EXPECT_THROW(apply_settings(cfg, {{"colour", "red"}}), Error);
  EXPECT_THROW(apply_settings(cfg, {{"policy", "0.5,0.5"}}), Error);
  EXPECT_THROW(apply_settings(cfg, {{"policy", "0.5,0.5,0.5,0.5"}}), Error);
  EXPECT_THROW(apply_settings(cfg, {{"bins", "-1"}}), Error);
}

TEST(Pipeline, OutputNames) {
  EXPECT_EQ(output_name("cars/a.bin", 0, TensorFormat::Native), "cars/a.etns");
  EXPECT_EQ(output_name("cars/a.bin", 3, TensorFormat::Npy), "cars/a_aug3.npy");
  EXPECT_EQ(output_name("b.csv", 1, TensorFormat::Native), "b_aug1.etns");
}

TEST(Pipeline, TensorCountAndMirroredTree) {
  const fs::path in = scratch("count_in"), out = scratch("count_out");
  write_synthetic_dataset(in, 10, 3, InputFormat::AtisBin, SensorGeometry(64, 48), 1);
  const RunManifest m = run_dataset(small_config(in, out));
  EXPECT_TRUE(m.ok());
  EXPECT_EQ(m.samples, 10u);
  EXPECT_EQ(m.entries.size(), 40u);
  std::size_t tensors = 0;
  for (const auto &[path, bytes] : snapshot(out)) {
    if (path.ends_with(".etns")) ++tensors;
  }
  EXPECT_EQ(tensors, 40u);
  EXPECT_TRUE(fs::exists(out / "class_01" / "image_0001_aug3.etns"));
  EXPECT_TRUE(fs::exists(out / kManifestFile));

  std::ifstream audit(out / kAuditFile);
  std::size_t lines = 0;
  for (std::string line; std::getline(audit, line); ++lines) {
    const auto j = nlohmann::ordered_json::parse(line);
    EXPECT_TRUE(j.contains("op"));
    EXPECT_GT(j.at("k").get<int>(), 0);
  }
  EXPECT_EQ(lines, 30u);
}

TEST(Pipeline, ConvertOnlyDrawsNothing) {
  const fs::path in = scratch("convert_in"), out = scratch("convert_out");
  write_synthetic_dataset(in, 4, 2, InputFormat::Csv, SensorGeometry(64, 48), 2);
  PipelineConfig cfg = small_config(in, out);
  cfg.input_format = InputFormat::Csv;
  cfg.k = 0;
  const RunManifest m = run_dataset(cfg);
  ASSERT_EQ(m.entries.size(), 4u);
  for (const auto &e : m.entries) {
    EXPECT_FALSE(e.op);
    EXPECT_EQ(e.events_before, e.events_after);
    const TensorGrid g = read_tensor(read_file(out / e.output));
    EXPECT_EQ(g.sum(), static_cast<double>(e.events_before));
  }
  EXPECT_EQ(read_file(out / kAuditFile).size(), 0u);
}

TEST(Pipeline, DeterministicAcrossWorkersAndReruns) {
  const fs::path in = scratch("det_in");
  write_synthetic_dataset(in, 12, 3, InputFormat::AtisBin, SensorGeometry(64, 48), 3);
  std::optional<std::map<std::string, Bytes>> first;
  for (unsigned workers : {1u, 3u, 1u}) {
    const fs::path out = scratch("det_out");
    PipelineConfig cfg = small_config(in, out);
    cfg.repr = Representation::Est;
    cfg.preview = true;
    cfg.workers = workers;
    run_dataset(cfg);
    const auto files = snapshot(out);
    if (!first) {
      first = files;
    } else {
      EXPECT_TRUE(files == *first) << "workers=" << workers;
    }
  }
}

TEST(Pipeline, ReplayRecreatesEveryEntry) {
  const fs::path in = scratch("replay_in"), out = scratch("replay_out");
  write_synthetic_dataset(in, 5, 2, InputFormat::AtisBin, SensorGeometry(64, 48), 4);
  PipelineConfig cfg = small_config(in, out);
  cfg.repr = Representation::VoxelGrid;
  cfg.out_format = TensorFormat::Npy;
  run_dataset(cfg);
  const Bytes text = read_file(out / kManifestFile);
  const auto manifest = nlohmann::ordered_json::parse(text.begin(), text.end());
  const std::size_t n = manifest.at("entries").size();
  ASSERT_EQ(n, 20u);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rel = manifest["entries"][i]["output"].get<std::string>();
    EXPECT_EQ(replay_entry(manifest, i, in), read_file(out / rel)) << rel;
  }
}

TEST(Pipeline, FailSoftAccounting) {
  const fs::path in = scratch("fail_in"), out = scratch("fail_out");
  write_synthetic_dataset(in, 6, 2, InputFormat::AtisBin, SensorGeometry(64, 48), 5);
  // A truncated file and one with an event outside the sensor.
  write_file(in / "class_00" / "broken.bin", Bytes(7, 0));
  write_file(in / "class_01" / "wide.bin", Bytes{200, 0, 0, 0, 1});
  const PipelineConfig cfg = small_config(in, out);
  const RunManifest m = run_dataset(cfg);
  EXPECT_FALSE(m.ok());
  EXPECT_EQ(m.samples, 8u);
  EXPECT_EQ(m.entries.size() + m.failures.size(), m.samples * (cfg.k + 1));
  EXPECT_EQ(m.failures.size(), 8u);
}

TEST(Pipeline, RejectsBadConfig) {
  const fs::path in = scratch("bad_in");
  PipelineConfig cfg = small_config(in, in);
  EXPECT_THROW(run_dataset(cfg), Error);
  cfg.output_root = scratch("bad_out");
  EXPECT_THROW(run_dataset(cfg), Error);  // no samples
  cfg.input_root = in / "missing";
  EXPECT_THROW(run_dataset(cfg), Error);
}

TEST(Preview, ZeroGridIsUniform) {
  const DecodedPng png = decode_png(render_preview(TensorGrid({Axis::Y, Axis::X}, {4, 6})));
  EXPECT_EQ(png.width, 6u);
  EXPECT_EQ(png.height, 4u);
  EXPECT_EQ(png.channels, 1);
  EXPECT_EQ(png.pixels, Bytes(24, 0));
  const DecodedPng color = decode_png(render_preview(TensorGrid({Axis::Polarity, Axis::Y, Axis::X}, {2, 4, 6})));
  EXPECT_EQ(color.pixels, Bytes(72, 255));
}

TEST(Preview, SingleEventColoursOnePixel) {
  const EventStream s(SensorGeometry(5, 3), {{2, 1, 10, 1}});
  const DecodedPng gray = decode_png(render_preview(build_event_frame(s)));
  std::size_t lit = 0;
  for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
    if (gray.pixels[i] != 0) {
      ++lit;
      EXPECT_EQ(i, 1u * 5 + 2);
    }
  }
  EXPECT_EQ(lit, 1u);

  const DecodedPng rgb = decode_png(render_preview(build_event_count(s)));
  ASSERT_EQ(rgb.channels, 3);
  std::size_t coloured = 0;
  for (std::size_t px = 0; px < 15; ++px) {
    const Bytes c(rgb.pixels.begin() + static_cast<long>(3 * px), rgb.pixels.begin() + static_cast<long>(3 * px + 3));
    if (c != Bytes{255, 255, 255}) {
      ++coloured;
      EXPECT_EQ(c, (Bytes{255, 0, 0}));
    }
  }
  EXPECT_EQ(coloured, 1u);

  const EventStream neg(SensorGeometry(5, 3), {{0, 0, 10, -1}});
  const DecodedPng blue = decode_png(render_preview(build_event_count(neg)));
  EXPECT_EQ(Bytes(blue.pixels.begin(), blue.pixels.begin() + 3), (Bytes{0, 0, 255}));
}

TEST(Preview, DeterministicAndReducesTime) {
  RngState rng(50);
  const EventStream s = reference::random_stream(rng, 2000, SensorGeometry(30, 20));
  EXPECT_EQ(render_preview(build_est(s)), render_preview(build_est(s)));
  EXPECT_EQ(decode_png(render_preview(build_voxel_grid(s, {1}))).pixels,
            decode_png(render_preview(build_event_frame(s))).pixels);
  EXPECT_THROW(render_preview(TensorGrid({Axis::Channel, Axis::Y, Axis::X}, {5, 2, 2})), Error);
}

TEST(Bench, OneRowPerStageAndThreadCount) {
  BenchConfig cfg;
  cfg.events = 20000;
  cfg.threads = 2;
  cfg.repeats = 1;
  const BenchReport report = benchmark(cfg);
  for (const char *name : {"atis_bin", "csv", "random_drop", "drop_by_time", "drop_by_area", "event_frame",
                           "event_count", "voxel_grid", "est", "augment_est_npy"}) {
    EXPECT_TRUE(report.find(name, 1)) << name;
    EXPECT_TRUE(report.find(name, 2)) << name;
  }
  EXPECT_EQ(report.rows.size(), 20u);
  const auto json = report_to_json(report);
  EXPECT_EQ(json.at("rows").size(), 20u);
  EXPECT_NE(format_report(report).find("event_frame"), std::string::npos);
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(EVENTDROP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodesAndSubcommands) {
  const fs::path in = scratch("cli_in"), out = scratch("cli_out");
  write_synthetic_dataset(in, 3, 1, InputFormat::AtisBin, SensorGeometry(64, 48), 6);
  const std::string io = "--input " + in.string() + " --output " + out.string() + " --width 64 --height 48";
  EXPECT_EQ(run_cli("augment " + io + " --k 2 --seed 5 --repr est --policy 0.25,0.25,0.25,0.25"), 0);
  EXPECT_EQ(snapshot(out).size(), 3u * 3 + 2);
  EXPECT_EQ(run_cli("augment " + io + " --policy 1,1,1,1"), 2);
  EXPECT_EQ(run_cli("augment " + io + " --repr nope"), 2);
  EXPECT_EQ(run_cli("augment --input " + in.string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);

  const fs::path conv = scratch("cli_conv");
  EXPECT_EQ(run_cli("convert --input " + in.string() + " --output " + conv.string() +
                    " --width 64 --height 48 --out-format npy --preview"),
            0);
  EXPECT_TRUE(fs::exists(conv / "class_00" / "image_0000.npy"));
  EXPECT_TRUE(fs::exists(conv / "class_00" / "image_0000.png"));

  write_file(in / "class_00" / "bad.bin", Bytes(3, 0));
  const fs::path failing = scratch("cli_fail");
  EXPECT_EQ(run_cli("convert --input " + in.string() + " --output " + failing.string() + " --width 64 --height 48"), 1);
  const std::string sample = (in / "class_00" / "image_0000.bin").string();
  EXPECT_EQ(run_cli("inspect --input " + sample + " --width 64 --height 48 --json"), 0);
  EXPECT_EQ(run_cli("inspect --input " + (in / "class_00" / "bad.bin").string()), 1);
  EXPECT_EQ(run_cli("preview --input " + sample + " --output " + (failing / "p.png").string() +
                    " --width 64 --height 48 --repr event_count"),
            0);
  EXPECT_TRUE(fs::exists(failing / "p.png"));
  EXPECT_EQ(run_cli("bench --events 5000 --repeats 1 --workers 2 --json"), 0);
}

TEST(Cli, ConfigFileAndSeedPrecedence) {
  const fs::path in = scratch("prec_in");
  write_synthetic_dataset(in, 2, 1, InputFormat::AtisBin, SensorGeometry(64, 48), 7);
  const fs::path cfg_file = scratch("prec_cfg") / "run.toml";
  {
    std::ofstream f(cfg_file);
    f << "input = \"" << in.string() << "\"\nwidth = 64\nheight = 48\nk = 2\nrepr = event_count\nseed = 11\n";
  }
  const auto manifest_of = [](const fs::path &out) {
    const Bytes text = read_file(out / kManifestFile);
    return nlohmann::ordered_json::parse(text.begin(), text.end());
  };
  const fs::path a = scratch("prec_a"), b = scratch("prec_b"), c = scratch("prec_c");
  EXPECT_EQ(run_cli("augment --config " + cfg_file.string() + " --output " + a.string()), 0);
  EXPECT_EQ(manifest_of(a)["config"]["seed"], 11);
  EXPECT_EQ(manifest_of(a)["config"]["repr"], "event_count");
  EXPECT_EQ(run_cli("augment --config " + cfg_file.string() + " --output " + b.string() + " --seed 12 --k 1"), 0);
  EXPECT_EQ(manifest_of(b)["config"]["seed"], 12);
  EXPECT_EQ(manifest_of(b)["entries"].size(), 4u);
  // The environment only fills in a seed nobody else set.
  const fs::path plain = scratch("prec_plain") / "run.toml";
  {
    std::ofstream f(plain);
    f << "input = \"" << in.string() << "\"\nwidth = 64\nheight = 48\nk = 1\n";
  }
  const std::string env_cmd = "EVENTDROP_SEED=77 " + std::string(EVENTDROP_CLI_PATH) + " augment --config " +
                              plain.string() + " --output " + c.string() + " >/dev/null 2>&1";
  ASSERT_EQ(std::system(env_cmd.c_str()), 0);
  EXPECT_EQ(manifest_of(c)["config"]["seed"], 77);
}

// Minimal PNG reader for the encoder's output: one IDAT, filter 0 rows.
DecodedPng decode_png(const Bytes &png);

}  // namespace
}  // namespace eventdrop

#include <zlib.h>

namespace eventdrop {
namespace {

std::uint32_t be32(const Bytes &b, std::size_t at) {
  return std::uint32_t{b[at]} << 24 | std::uint32_t{b[at + 1]} << 16 | std::uint32_t{b[at + 2]} << 8 | b[at + 3];
}

DecodedPng decode_png(const Bytes &png) {
  DecodedPng out;
  EXPECT_EQ(Bytes(png.begin(), png.begin() + 8), (Bytes{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'}));
  std::size_t at = 8;
  Bytes idat;
  while (at + 8 <= png.size()) {
    const std::uint32_t len = be32(png, at);
    const std::string type(png.begin() + static_cast<long>(at + 4), png.begin() + static_cast<long>(at + 8));
    const std::size_t body = at + 8;
    const uLong crc = crc32(0L, png.data() + at + 4, len + 4);
    EXPECT_EQ(be32(png, body + len), static_cast<std::uint32_t>(crc)) << type;
    if (type == "IHDR") {
      out.width = be32(png, body);
      out.height = be32(png, body + 4);
      out.channels = png[body + 9] == 2 ? 3 : 1;
    } else if (type == "IDAT") {
      idat.insert(idat.end(), png.begin() + static_cast<long>(body), png.begin() + static_cast<long>(body + len));
    }
    at = body + len + 4;
  }
  const std::size_t stride = out.width * out.channels + 1;
  Bytes raw(stride * out.height);
  uLongf raw_len = raw.size();
  EXPECT_EQ(uncompress(raw.data(), &raw_len, idat.data(), idat.size()), Z_OK);
  for (std::size_t row = 0; row < out.height; ++row) {
    EXPECT_EQ(raw[row * stride], 0);
    out.pixels.insert(out.pixels.end(), raw.begin() + static_cast<long>(row * stride + 1),
                      raw.begin() + static_cast<long>((row + 1) * stride));
  }
  return out;
}

}  // namespace
}  // namespace eventdrop
