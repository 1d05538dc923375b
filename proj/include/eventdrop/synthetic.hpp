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

#include "eventdrop/core.hpp"
#include "eventdrop/rng.hpp"

namespace eventdrop {

/// Events uniform over pixels and over [0, duration_us], polarity +/-1 with
/// equal odds, sorted by time.
EventStream make_synthetic_stream(std::size_t count, SensorGeometry geometry,
                                  Timestamp duration_us, RngState &rng);

enum class InputFormat : std::uint8_t { AtisBin, Csv };

/// Writes `samples` files spread over `classes` sub-directories. Event counts
/// are drawn from [min_events, max_events]; timestamps stay below 2^23 so the
/// ATIS layout can hold them.
void write_synthetic_dataset(const std::filesystem::path &root, std::size_t samples,
                             std::size_t classes, InputFormat format, SensorGeometry geometry,
                             std::uint64_t seed, std::size_t min_events = 100,
                             std::size_t max_events = 5000);

}  // namespace eventdrop
