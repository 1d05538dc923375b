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
#include "eventdrop/synthetic.hpp"

#include <algorithm>
#include <cstdio>

#include "eventdrop/codec.hpp"

namespace eventdrop {

EventStream make_synthetic_stream(std::size_t count, SensorGeometry geometry,
                                  Timestamp duration_us, RngState &rng) {
  std::vector<Timestamp> times(count);
  for (auto &t : times) t = rng.uniform_below(duration_us + 1);
  std::sort(times.begin(), times.end());
  std::vector<Event> events(count);
  for (std::size_t i = 0; i < count; ++i) {
    events[i].x = static_cast<std::uint16_t>(rng.uniform_below(geometry.width()));
    events[i].y = static_cast<std::uint16_t>(rng.uniform_below(geometry.height()));
    events[i].t = times[i];
    events[i].p = rng.uniform_below(2) ? 1 : -1;
  }
  return EventStream(geometry, std::move(events));
}

void write_synthetic_dataset(const std::filesystem::path &root, std::size_t samples,
                             std::size_t classes, InputFormat format, SensorGeometry geometry,
                             std::uint64_t seed, std::size_t min_events, std::size_t max_events) {
  RngState rng(seed);
  classes = std::max<std::size_t>(classes, 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto count = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(min_events), static_cast<std::int64_t>(max_events)));
    const Timestamp duration = 1000 + rng.uniform_below(300000);
    const EventStream stream = make_synthetic_stream(count, geometry, duration, rng);
    char name[64];
    std::snprintf(name, sizeof name, "class_%02zu/image_%04zu", i % classes, i);
    std::filesystem::path path = root / name;
    if (format == InputFormat::AtisBin) {
      path += ".bin";
      write_file(path, write_atis_bin(stream));
    } else {
      path += ".csv";
      const std::string text = write_csv(stream);
      write_file(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
    }
  }
}

}  // namespace eventdrop
