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

#include "eventdrop/core.hpp"
#include "eventdrop/represent.hpp"

namespace eventdrop {

/// Structure-of-arrays view of a stream, the layout foreign array libraries use.
struct EventColumns {
  std::vector<std::uint16_t> x;
  std::vector<std::uint16_t> y;
  std::vector<std::uint64_t> t;
  std::vector<std::int8_t> p;

  std::size_t size() const noexcept { return t.size(); }
  friend bool operator==(const EventColumns &, const EventColumns &) = default;
};

/// Validates (and stable-sorts) four parallel columns. Throws InvalidArgument
/// when lengths differ, otherwise the usual validate_stream errors.
EventStream from_columns(std::span<const std::uint16_t> x, std::span<const std::uint16_t> y,
                         std::span<const std::uint64_t> t, std::span<const std::int8_t> p,
                         SensorGeometry geometry);

EventColumns to_columns(const EventStream &stream);

/// Channels-first float payload; identical to the payload write_tensor stores
/// for the same stream and config.
std::vector<float> representation_payload(const EventStream &stream, Representation repr,
                                          const GridConfig &cfg = {});

}  // namespace eventdrop
