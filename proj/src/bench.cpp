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
#include "eventdrop/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <thread>

#include "eventdrop/augment.hpp"
#include "eventdrop/codec.hpp"
#include "eventdrop/synthetic.hpp"

namespace eventdrop {
namespace {

using Clock = std::chrono::steady_clock;

// Best wall time over `repeats` runs of `threads` concurrent calls.
double time_parallel(unsigned threads, unsigned repeats, const std::function<void(unsigned)> &fn) {
  double best = 1e300;
  for (unsigned r = 0; r < std::max(repeats, 1u); ++r) {
    const auto start = Clock::now();
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 1; t < threads; ++t) pool.emplace_back(fn, t);
      fn(0);
    }
    best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count());
  }
  return best;
}

}  // namespace

const BenchRow *BenchReport::find(std::string_view name, unsigned threads) const {
  for (const auto &row : rows) {
    if (row.name == name && row.threads == threads) return &row;
  }
  return nullptr;
}

BenchReport benchmark(const BenchConfig &cfg) {
  BenchReport report;
  report.config = cfg;
  const unsigned multi = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  report.config.threads = multi;

  RngState rng(cfg.seed);
  // Timestamps kept inside the ATIS range so the decode stage sees real records.
  const EventStream stream = make_synthetic_stream(cfg.events, cfg.geometry, kAtisMaxTimestamp, rng);
  const SensorGeometry atis_geometry(std::min<std::uint32_t>(cfg.geometry.width(), 256),
                                     std::min<std::uint32_t>(cfg.geometry.height(), 256));
  std::vector<Event> clipped(stream.events().begin(), stream.events().end());
  for (auto &e : clipped) {
    e.x = static_cast<std::uint16_t>(std::min<std::uint32_t>(e.x, atis_geometry.width() - 1));
    e.y = static_cast<std::uint16_t>(std::min<std::uint32_t>(e.y, atis_geometry.height() - 1));
  }
  const Bytes atis = write_atis_bin(EventStream(atis_geometry, std::move(clipped)));
  const std::string csv = write_csv(stream);
  const GridConfig grid{cfg.time_bins, EstNormalization::BinSize};

  struct Stage {
    std::string stage;
    std::string name;
    std::function<void(unsigned)> run;
  };
  const auto seeded = [&](unsigned t) { return RngState(cfg.seed * 7919 + t); };
  std::vector<Stage> stages = {
      {"decode", "atis_bin", [&](unsigned) { (void)read_atis_bin(atis, atis_geometry); }},
      {"decode", "csv", [&](unsigned) { (void)read_csv(csv, cfg.geometry); }},
      {"drop", "random_drop",
       [&](unsigned t) {
         auto r = seeded(t);
         (void)random_drop(stream, Magnitude::for_op(DropOp::RandomDrop, 5), r);
       }},
      {"drop", "drop_by_time",
       [&](unsigned t) {
         auto r = seeded(t);
         (void)drop_by_time(stream, Magnitude::for_op(DropOp::DropByTime, 5), r);
       }},
      {"drop", "drop_by_area",
       [&](unsigned t) {
         auto r = seeded(t);
         (void)drop_by_area(stream, Magnitude::for_op(DropOp::DropByArea, 3), r);
       }},
  };
  for (auto repr : {Representation::EventFrame, Representation::EventCount, Representation::VoxelGrid,
                    Representation::Est}) {
    stages.push_back({"represent", std::string(representation_name(repr)),
                      [&, repr](unsigned) { (void)build_representation(stream, repr, grid); }});
  }
  stages.push_back({"end_to_end", "augment_est_npy", [&](unsigned t) {
                      auto r = seeded(t);
                      const AugmentResult aug = apply_policy(stream, AugmentPolicy::uniform(), r);
                      (void)write_tensor(build_est(aug.stream, grid), TensorFormat::Npy);
                    }});

  std::vector<unsigned> thread_counts = {1};
  if (multi > 1) thread_counts.push_back(multi);
  for (const auto &s : stages) {
    for (unsigned threads : thread_counts) {
      BenchRow row;
      row.stage = s.stage;
      row.name = s.name;
      row.threads = threads;
      row.events = std::uint64_t{threads} * cfg.events;
      row.seconds = time_parallel(threads, cfg.repeats, s.run);
      row.events_per_second = row.seconds > 0 ? static_cast<double>(row.events) / row.seconds : 0.0;
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string format_report(const BenchReport &report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "events=%zu sensor=%ux%u bins=%u threads=%u\n",
                report.config.events, report.config.geometry.width(), report.config.geometry.height(),
                report.config.time_bins, report.config.threads);
  out += line;
  std::snprintf(line, sizeof line, "%-11s %-16s %7s %12s %16s\n", "stage", "name", "threads",
                "seconds", "events/s");
  out += line;
  for (const auto &row : report.rows) {
    std::snprintf(line, sizeof line, "%-11s %-16s %7u %12.6f %16.0f\n", row.stage.c_str(),
                  row.name.c_str(), row.threads, row.seconds, row.events_per_second);
    out += line;
  }
  return out;
}

nlohmann::ordered_json report_to_json(const BenchReport &report) {
  nlohmann::ordered_json j;
  j["events"] = report.config.events;
  j["width"] = report.config.geometry.width();
  j["height"] = report.config.geometry.height();
  j["bins"] = report.config.time_bins;
  j["threads"] = report.config.threads;
  auto &rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto &row : report.rows) {
    rows.push_back({{"stage", row.stage},
                    {"name", row.name},
                    {"threads", row.threads},
                    {"events", row.events},
                    {"seconds", row.seconds},
                    {"events_per_second", row.events_per_second}});
  }
  return j;
}

}  // namespace eventdrop
