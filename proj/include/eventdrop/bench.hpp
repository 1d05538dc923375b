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
#include <string>
#include <vector>

#include <json.hpp>

#include "eventdrop/core.hpp"
#include "eventdrop/represent.hpp"

namespace eventdrop {

struct BenchConfig {
  std::size_t events = 1'000'000;
  SensorGeometry geometry{240, 180};
  std::uint32_t time_bins = 9;
  unsigned threads = 0;  // 0: hardware concurrency
  unsigned repeats = 3;  // best of
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string stage;           // decode, drop, represent, end_to_end
  std::string name;            // atis_bin, random_drop, est, ...
  unsigned threads = 1;
  std::uint64_t events = 0;    // events processed across all threads
  double seconds = 0.0;
  double events_per_second = 0.0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;

  const BenchRow *find(std::string_view name, unsigned threads) const;
};

/// Times each stage on a synthetic stream, once on one thread and once on
/// `threads` threads each working on its own copy.
BenchReport benchmark(const BenchConfig &cfg);

std::string format_report(const BenchReport &report);
nlohmann::ordered_json report_to_json(const BenchReport &report);

}  // namespace eventdrop
