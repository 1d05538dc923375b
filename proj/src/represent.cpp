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
#include "eventdrop/represent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eventdrop {
namespace {

std::vector<float> to_float(const std::vector<std::uint64_t> &counts) {
  std::vector<float> out(counts.size());
  std::transform(counts.begin(), counts.end(), out.begin(),
                 [](std::uint64_t c) { return static_cast<float>(c); });
  return out;
}

std::vector<float> to_float(const std::vector<double> &values) {
  std::vector<float> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [](double v) { return static_cast<float>(v); });
  return out;
}

std::size_t polarity_channel(std::int8_t p) { return p > 0 ? 1 : 0; }

void require_bins(const GridConfig &cfg) {
  if (cfg.time_bins < 1) throw Error(Errc::InvalidArgument, "time_bins must be >= 1");
}

}  // namespace

std::string_view representation_name(Representation repr) noexcept {
  switch (repr) {
    case Representation::EventFrame: return "event_frame";
    case Representation::EventCount: return "event_count";
    case Representation::VoxelGrid: return "voxel_grid";
    case Representation::Est: return "est";
  }
  return "?";
}

std::optional<Representation> representation_from_name(std::string_view name) noexcept {
  for (auto r : {Representation::EventFrame, Representation::EventCount, Representation::VoxelGrid,
                 Representation::Est}) {
    if (representation_name(r) == name) return r;
  }
  return std::nullopt;
}

TensorGrid build_event_frame(const EventStream &stream) {
  const SensorGeometry &g = stream.geometry();
  std::vector<std::uint64_t> counts(g.pixels(), 0);
  const std::size_t width = g.width();
  for (const Event &e : stream.events()) ++counts[e.y * width + e.x];
  return TensorGrid({Axis::Y, Axis::X}, {g.height(), g.width()}, to_float(counts));
}

TensorGrid build_event_count(const EventStream &stream) {
  const SensorGeometry &g = stream.geometry();
  const std::size_t plane = g.pixels();
  const std::size_t width = g.width();
  std::vector<std::uint64_t> counts(2 * plane, 0);
  for (const Event &e : stream.events()) {
    ++counts[polarity_channel(e.p) * plane + e.y * width + e.x];
  }
  return TensorGrid({Axis::Polarity, Axis::Y, Axis::X}, {2, g.height(), g.width()},
                    to_float(counts));
}

TensorGrid build_voxel_grid(const EventStream &stream, const GridConfig &cfg) {
  require_bins(cfg);
  const SensorGeometry &g = stream.geometry();
  const std::size_t plane = g.pixels();
  const std::size_t width = g.width();
  const std::uint64_t bins = cfg.time_bins;
  std::vector<std::uint64_t> counts(bins * plane, 0);
  const Timestamp t1 = stream.t_first();
  const unsigned __int128 duration = stream.duration();
  for (const Event &e : stream.events()) {
    std::uint64_t bin = 0;
    if (duration > 0 && e.t > t1) {
      // Smallest n+1 with (t - t1) <= (n+1) * D / C, i.e. ceil((t - t1) * C / D).
      const unsigned __int128 scaled = static_cast<unsigned __int128>(e.t - t1) * bins;
      bin = static_cast<std::uint64_t>((scaled + duration - 1) / duration) - 1;
    }
    ++counts[bin * plane + e.y * width + e.x];
  }
  return TensorGrid({Axis::TimeBin, Axis::Y, Axis::X}, {cfg.time_bins, g.height(), g.width()},
                    to_float(counts));
}

double trilinear_kernel(std::int64_t dx, std::int64_t dy, double dt, double bin_size) {
  if (!(bin_size > 0.0)) throw Error(Errc::ZeroDuration, "kernel bin size must be positive");
  if (dx != 0 || dy != 0) return 0.0;
  return std::max(0.0, 1.0 - std::abs(dt / bin_size));
}

TensorGrid build_est(const EventStream &stream, const GridConfig &cfg) {
  require_bins(cfg);
  const SensorGeometry &g = stream.geometry();
  const std::size_t plane = g.pixels();
  const std::size_t width = g.width();
  const std::size_t bins = cfg.time_bins;
  std::vector<std::size_t> shape = {2, bins, g.height(), g.width()};
  std::vector<Axis> axes = {Axis::Polarity, Axis::TimeBin, Axis::Y, Axis::X};
  if (stream.empty()) return TensorGrid(std::move(axes), std::move(shape));
  if (stream.duration() == 0) {
    throw Error(Errc::ZeroDuration, "EST needs t_1 < t_I; bin size would be zero");
  }

  std::vector<double> acc(2 * bins * plane, 0.0);
  const auto t1 = static_cast<double>(stream.t_first());
  const auto duration = static_cast<double>(stream.duration());
  const double bin_size = duration / static_cast<double>(bins);
  const double norm = cfg.est_normalization == EstNormalization::BinSize ? bin_size : duration;

  for (const Event &e : stream.events()) {
    const double rel = static_cast<double>(e.t) - t1;
    const double f = rel / norm;
    // Position in bin units; centres sit at u = c + 1, so only c = floor(u) - 1
    // and c = floor(u) can have |t_c - t| < dT.
    const double u = rel / bin_size;
    const auto lower = static_cast<std::int64_t>(std::floor(u)) - 1;
    const std::size_t base = polarity_channel(e.p) * bins * plane + e.y * width + e.x;
    for (std::int64_t c = lower; c <= lower + 1; ++c) {
      if (c < 0 || c >= static_cast<std::int64_t>(bins)) continue;
      const double w = std::max(0.0, 1.0 - std::abs(static_cast<double>(c + 1) - u));
      if (w > 0.0) acc[base + static_cast<std::size_t>(c) * plane] += f * w;
    }
  }
  return TensorGrid(std::move(axes), std::move(shape), to_float(acc));
}

TensorGrid flatten_channels(const TensorGrid &grid) {
  const auto axes = grid.axes();
  const std::size_t rank = grid.rank();
  if (rank < 2 || axes[rank - 2] != Axis::Y || axes[rank - 1] != Axis::X) {
    throw Error(Errc::UnsupportedShape, "flatten_channels needs trailing [y, x] axes");
  }
  std::size_t channels = 1;
  for (std::size_t i = 0; i + 2 < rank; ++i) {
    if (axes[i] != Axis::Polarity && axes[i] != Axis::TimeBin && axes[i] != Axis::Channel) {
      throw Error(Errc::UnsupportedShape, "unexpected leading axis " +
                                              std::string(axis_name(axes[i])));
    }
    channels *= grid.extent(i);
  }
  const auto data = grid.data();
  return TensorGrid({Axis::Channel, Axis::Y, Axis::X},
                    {channels, grid.extent(rank - 2), grid.extent(rank - 1)},
                    std::vector<float>(data.begin(), data.end()));
}

TensorGrid build_representation(const EventStream &stream, Representation repr,
                                const GridConfig &cfg) {
  switch (repr) {
    case Representation::EventFrame: return build_event_frame(stream);
    case Representation::EventCount: return build_event_count(stream);
    case Representation::VoxelGrid: return build_voxel_grid(stream, cfg);
    case Representation::Est: return build_est(stream, cfg);
  }
  throw Error(Errc::InvalidArgument, "unknown representation");
}

}  // namespace eventdrop
