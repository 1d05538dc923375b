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
#include <optional>
#include <string_view>

#include "eventdrop/core.hpp"
#include "eventdrop/tensor.hpp"

namespace eventdrop {

enum class Representation : std::uint8_t { EventFrame, EventCount, VoxelGrid, Est };

std::string_view representation_name(Representation repr) noexcept;
std::optional<Representation> representation_from_name(std::string_view name) noexcept;

/// Timestamp normalisation used by the EST builder.
///   BinSize:  f(t) = (t - t_1) / dT, ranging over [0, C]
///   Duration: f(t) = (t - t_1) / (t_I - t_1), ranging over [0, 1]
enum class EstNormalization : std::uint8_t { BinSize, Duration };

struct GridConfig {
  std::uint32_t time_bins = 9;
  EstNormalization est_normalization = EstNormalization::BinSize;
};

/// Per-pixel event histogram, axes [y, x].
TensorGrid build_event_frame(const EventStream &stream);

/// Per-polarity histograms, axes [polarity, y, x]; channel 0 = negative.
TensorGrid build_event_count(const EventStream &stream);

/// Counts in C temporal bins, axes [time_bin, y, x].
///
/// Bin n covers (t_1 + n*dT, t_1 + (n+1)*dT] with dT = (t_I - t_1)/C; bin 0 is
/// also closed on the left so the first event is counted. Bin membership is
/// decided in exact integer arithmetic. A zero-duration stream puts all of its
/// events in bin 0.
TensorGrid build_voxel_grid(const EventStream &stream, const GridConfig &cfg = {});

/// k(dx, dy, dt) = delta(dx, dy) * max(0, 1 - |dt / dT|). Requires dT > 0.
double trilinear_kernel(std::int64_t dx, std::int64_t dy, double dt, double bin_size);

/// Event spike tensor with the trilinear kernel, axes [polarity, time_bin, y, x].
///
/// Cell (c, y, x) of polarity +/- sums f(t_i) * k(0, 0, t_c - t_i) over the
/// events of that polarity at the pixel, with bin centres t_c = t_1 + (c+1)dT.
/// Each event touches at most the two bins adjacent to its timestamp.
/// Throws ZeroDuration for a non-empty stream with t_1 == t_I; an empty stream
/// gives a zero tensor.
TensorGrid build_est(const EventStream &stream, const GridConfig &cfg = {});

/// Merges polarity and time_bin axes (polarity-major) into one channel axis in
/// front of [y, x]. A bare [y, x] grid gains a singleton channel.
TensorGrid flatten_channels(const TensorGrid &grid);

TensorGrid build_representation(const EventStream &stream, Representation repr,
                                const GridConfig &cfg = {});

}  // namespace eventdrop
