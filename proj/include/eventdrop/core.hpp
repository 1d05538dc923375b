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
#include <span>
#include <vector>

#include "eventdrop/error.hpp"

namespace eventdrop {

using Timestamp = std::uint64_t;  // microseconds

/// One sensor event. Polarity is -1 or +1 once it has passed a codec.
struct Event {
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  Timestamp t = 0;
  std::int8_t p = 1;

  friend bool operator==(const Event &, const Event &) = default;
};

/// Unvalidated event as it comes out of a parser; wide fields so that
/// out-of-range values can be reported instead of silently truncated.
struct RawEvent {
  std::int64_t x = 0;
  std::int64_t y = 0;
  Timestamp t = 0;
  int p = 1;
};

class SensorGeometry {
 public:
  static constexpr std::uint32_t kMaxSide = 1u << 16;

  /// Throws InvalidGeometry unless 1 <= width, height <= 65536.
  SensorGeometry(std::uint32_t width, std::uint32_t height);

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::size_t pixels() const noexcept { return std::size_t{width_} * height_; }

  bool contains(std::int64_t x, std::int64_t y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  friend bool operator==(const SensorGeometry &, const SensorGeometry &) = default;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
};

/// Time-ordered events on a fixed sensor. Immutable once built.
class EventStream {
 public:
  explicit EventStream(SensorGeometry geometry) : geometry_(geometry) {}

  /// Requires in-range coordinates, p in {-1,+1} and non-decreasing t.
  /// Use validate_stream() for input that may be unsorted.
  EventStream(SensorGeometry geometry, std::vector<Event> events);

  const SensorGeometry &geometry() const noexcept { return geometry_; }
  std::span<const Event> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const Event &operator[](std::size_t i) const { return events_[i]; }

  Timestamp t_first() const noexcept { return events_.empty() ? 0 : events_.front().t; }
  Timestamp t_last() const noexcept { return events_.empty() ? 0 : events_.back().t; }
  Timestamp duration() const noexcept { return t_last() - t_first(); }

  friend bool operator==(const EventStream &, const EventStream &) = default;

 private:
  SensorGeometry geometry_;
  std::vector<Event> events_;
};

struct StreamStats {
  std::uint64_t count = 0;
  std::uint64_t positive_count = 0;
  std::uint64_t negative_count = 0;
  Timestamp t_first = 0;
  Timestamp t_last = 0;
  Timestamp duration = 0;

  friend bool operator==(const StreamStats &, const StreamStats &) = default;
};

/// Checks polarity and coordinates, then stable-sorts by timestamp.
EventStream validate_stream(std::span<const RawEvent> events, SensorGeometry geometry);
EventStream validate_stream(std::vector<Event> events, SensorGeometry geometry);

StreamStats stream_stats(const EventStream &stream) noexcept;

}  // namespace eventdrop
