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
#include "eventdrop/core.hpp"

#include <algorithm>
#include <string>

namespace eventdrop {
namespace {

void check_event(const SensorGeometry &g, std::int64_t x, std::int64_t y, int p, std::size_t index) {
  if (p != 1 && p != -1) {
    throw Error(Errc::InvalidPolarity,
                "event " + std::to_string(index) + " has polarity " + std::to_string(p));
  }
  if (!g.contains(x, y)) {
    throw Error(Errc::CoordinateOutOfRange,
                "event " + std::to_string(index) + " at (" + std::to_string(x) + ", " +
                    std::to_string(y) + ") outside " + std::to_string(g.width()) + "x" +
                    std::to_string(g.height()));
  }
}

bool by_time(const Event &a, const Event &b) { return a.t < b.t; }

}  // namespace

SensorGeometry::SensorGeometry(std::uint32_t width, std::uint32_t height)
    : width_(width), height_(height) {
  if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide) {
    throw Error(Errc::InvalidGeometry,
                "sensor " + std::to_string(width) + "x" + std::to_string(height));
  }
}

EventStream::EventStream(SensorGeometry geometry, std::vector<Event> events)
    : geometry_(geometry), events_(std::move(events)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const Event &e = events_[i];
    check_event(geometry_, e.x, e.y, e.p, i);
    if (i > 0 && e.t < events_[i - 1].t) {
      throw Error(Errc::UnsortedStream, "timestamp decreases at event " + std::to_string(i));
    }
  }
}

EventStream validate_stream(std::vector<Event> events, SensorGeometry geometry) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    check_event(geometry, events[i].x, events[i].y, events[i].p, i);
  }
  if (!std::is_sorted(events.begin(), events.end(), by_time)) {
    std::stable_sort(events.begin(), events.end(), by_time);
  }
  return EventStream(geometry, std::move(events));
}

EventStream validate_stream(std::span<const RawEvent> events, SensorGeometry geometry) {
  std::vector<Event> out;
  out.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    const RawEvent &r = events[i];
    check_event(geometry, r.x, r.y, r.p, i);
    out.push_back(Event{static_cast<std::uint16_t>(r.x), static_cast<std::uint16_t>(r.y), r.t,
                        static_cast<std::int8_t>(r.p)});
  }
  return validate_stream(std::move(out), geometry);
}

StreamStats stream_stats(const EventStream &stream) noexcept {
  StreamStats s;
  s.count = stream.size();
  for (const Event &e : stream.events()) {
    if (e.p > 0) {
      ++s.positive_count;
    } else {
      ++s.negative_count;
    }
  }
  s.t_first = stream.t_first();
  s.t_last = stream.t_last();
  s.duration = stream.duration();
  return s;
}

}  // namespace eventdrop
