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
#include "eventdrop/columnar.hpp"

#include <string>

namespace eventdrop {

EventStream from_columns(std::span<const std::uint16_t> x, std::span<const std::uint16_t> y,
                         std::span<const std::uint64_t> t, std::span<const std::int8_t> p,
                         SensorGeometry geometry) {
  const std::size_t n = t.size();
  if (x.size() != n || y.size() != n || p.size() != n) {
    throw Error(Errc::InvalidArgument, "column lengths differ: x=" + std::to_string(x.size()) +
                                           " y=" + std::to_string(y.size()) + " t=" +
                                           std::to_string(n) + " p=" + std::to_string(p.size()));
  }
  std::vector<Event> events(n);
  for (std::size_t i = 0; i < n; ++i) events[i] = Event{x[i], y[i], t[i], p[i]};
  return validate_stream(std::move(events), geometry);
}

EventColumns to_columns(const EventStream &stream) {
  EventColumns c;
  c.x.reserve(stream.size());
  c.y.reserve(stream.size());
  c.t.reserve(stream.size());
  c.p.reserve(stream.size());
  for (const Event &e : stream.events()) {
    c.x.push_back(e.x);
    c.y.push_back(e.y);
    c.t.push_back(e.t);
    c.p.push_back(e.p);
  }
  return c;
}

std::vector<float> representation_payload(const EventStream &stream, Representation repr,
                                          const GridConfig &cfg) {
  const TensorGrid flat = flatten_channels(build_representation(stream, repr, cfg));
  return {flat.data().begin(), flat.data().end()};
}

}  // namespace eventdrop
