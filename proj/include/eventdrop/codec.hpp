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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eventdrop/core.hpp"
#include "eventdrop/tensor.hpp"

namespace eventdrop {

using Bytes = std::vector<std::uint8_t>;

// ATIS .bin: 5 bytes per event, big-endian within the record.
//   byte0 = x, byte1 = y, byte2 = p<<7 | t[22:16], byte3 = t[15:8], byte4 = t[7:0]
inline constexpr std::size_t kAtisRecordSize = 5;
inline constexpr Timestamp kAtisMaxTimestamp = (Timestamp{1} << 23) - 1;

EventStream read_atis_bin(std::span<const std::uint8_t> bytes, SensorGeometry geometry);
/// Throws FieldOverflow if x or y >= 256 or t >= 2^23.
Bytes write_atis_bin(const EventStream &stream);

/// CSV with header `x,y,t,p`; polarity 0 is read as -1. Throws ParseError.
EventStream read_csv(std::string_view text, SensorGeometry geometry);
std::string write_csv(const EventStream &stream);

enum class TensorFormat { Native, Npy };

/// Native container: "ETNS", version, dtype tag, axis count, u64 extents,
/// axis tags, then float32 little-endian payload. Npy emits NPY v1.0.
Bytes write_tensor(const TensorGrid &grid, TensorFormat format);
/// Detects the container from its magic bytes.
TensorGrid read_tensor(std::span<const std::uint8_t> bytes);
TensorGrid read_etns(std::span<const std::uint8_t> bytes);
/// NPY has no axis names; they are inferred from rank: (x), (y,x),
/// (channel,y,x), (polarity,time_bin,y,x).
TensorGrid read_npy(std::span<const std::uint8_t> bytes);

/// Little-endian float32 payload exactly as written into either container.
Bytes tensor_payload(const TensorGrid &grid);

Bytes read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

}  // namespace eventdrop
