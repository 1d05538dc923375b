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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "eventdrop/core.hpp"
#include "eventdrop/rng.hpp"

namespace eventdrop {

enum class DropOp : std::uint8_t { Identity = 0, RandomDrop = 1, DropByTime = 2, DropByArea = 3 };

inline constexpr std::array<DropOp, 4> kAllDropOps = {DropOp::Identity, DropOp::RandomDrop,
                                                      DropOp::DropByTime, DropOp::DropByArea};

std::string_view op_name(DropOp op) noexcept;
std::optional<DropOp> op_from_name(std::string_view name) noexcept;

/// Discrete drop magnitude rho = level / denominator.
///
/// Random drop and drop-by-time use nine levels 0.1 .. 0.9 (denominator 10);
/// drop-by-area uses five levels 0.05 .. 0.25 (denominator 20). Keeping the
/// level as an integer lets every threshold be evaluated in exact arithmetic.
class Magnitude {
 public:
  /// Throws InvalidArgument if `level` is not one of the op's levels.
  static Magnitude for_op(DropOp op, int level);
  static int level_count(DropOp op) noexcept;

  int level() const noexcept { return level_; }
  int denominator() const noexcept { return denominator_; }
  double value() const noexcept { return static_cast<double>(level_) / denominator_; }

  friend bool operator==(const Magnitude &, const Magnitude &) = default;

 private:
  Magnitude(int level, int denominator) : level_(level), denominator_(denominator) {}

  int level_;
  int denominator_;
};

/// Closed interval [t_min, t_max] of dropped timestamps.
struct TimeWindow {
  double t_min = 0.0;
  double t_max = 0.0;

  bool contains(Timestamp t) const noexcept {
    const auto v = static_cast<double>(t);
    return v >= t_min && v <= t_max;
  }
  friend bool operator==(const TimeWindow &, const TimeWindow &) = default;
};

/// Closed pixel region [x0, x0 + rho*W] x [y0, y0 + rho*H]; clipped by the sensor.
struct AreaRegion {
  std::uint32_t x0 = 0;
  std::uint32_t y0 = 0;
  Magnitude ratio = Magnitude::for_op(DropOp::DropByArea, 1);
  SensorGeometry geometry{1, 1};

  bool contains(std::uint32_t x, std::uint32_t y) const noexcept {
    // x - x0 <= level/denominator * W, evaluated without rounding.
    const auto within = [&](std::uint32_t v, std::uint32_t origin, std::uint32_t side) {
      return v >= origin && std::uint64_t{v - origin} * ratio.denominator() <=
                                std::uint64_t{side} * ratio.level();
    };
    return within(x, x0, geometry.width()) && within(y, y0, geometry.height());
  }
  double x1() const noexcept { return x0 + ratio.value() * geometry.width(); }
  double y1() const noexcept { return y0 + ratio.value() * geometry.height(); }
  friend bool operator==(const AreaRegion &, const AreaRegion &) = default;
};

/// How drop-by-time closes its window. Clip uses min(t_I, T_min + rho*D);
/// Literal reproduces the max(...) form, which always reaches the stream end.
enum class TimeWindowRule : std::uint8_t { Clip, Literal };

class AugmentPolicy {
 public:
  /// Probabilities in kAllDropOps order. Throws InvalidArgument unless every
  /// entry is >= 0 and they sum to 1 within 1e-9.
  explicit AugmentPolicy(std::array<double, 4> probabilities);
  static AugmentPolicy uniform() { return AugmentPolicy({0.25, 0.25, 0.25, 0.25}); }
  static AugmentPolicy only(DropOp op);

  const std::array<double, 4> &probabilities() const noexcept { return probabilities_; }
  double probability(DropOp op) const noexcept {
    return probabilities_[static_cast<std::size_t>(op)];
  }
  DropOp select(RngState &rng) const noexcept;

  TimeWindowRule time_rule = TimeWindowRule::Clip;

 private:
  std::array<double, 4> probabilities_;
};

/// What one augmentation did; enough to replay it from `seed`.
struct AppliedOpRecord {
  DropOp op = DropOp::Identity;
  std::optional<Magnitude> ratio;
  std::optional<TimeWindow> window;
  std::optional<AreaRegion> region;
  std::uint64_t seed = 0;
  std::uint64_t draws = 0;
  std::uint64_t events_before = 0;
  std::uint64_t events_after = 0;

  friend bool operator==(const AppliedOpRecord &, const AppliedOpRecord &) = default;
};

nlohmann::ordered_json to_json(const AppliedOpRecord &record);
AppliedOpRecord record_from_json(const nlohmann::ordered_json &json, SensorGeometry geometry);

struct AugmentResult {
  EventStream stream;
  AppliedOpRecord record;
};

/// Keeps exactly floor(I * (1 - rho)) events chosen uniformly without
/// replacement (selection sampling), in their original order.
AugmentResult random_drop(const EventStream &stream, Magnitude ratio, RngState &rng);

/// Drops events with T_min <= t <= T_max where T_min ~ U[t_1, t_I].
/// Zero-duration and empty streams come back unchanged with no window.
AugmentResult drop_by_time(const EventStream &stream, Magnitude ratio, RngState &rng,
                           TimeWindowRule rule = TimeWindowRule::Clip);

/// Drops events inside a region whose origin is uniform over the pixel grid.
AugmentResult drop_by_area(const EventStream &stream, Magnitude ratio, RngState &rng);

// Deterministic halves of the drop ops: apply an already-drawn window/region.
EventStream drop_time_window(const EventStream &stream, const TimeWindow &window);
EventStream drop_area_region(const EventStream &stream, const AreaRegion &region);
std::size_t random_drop_keep_count(std::size_t count, Magnitude ratio) noexcept;

/// Picks one op per the policy, draws its magnitude level uniformly, applies it.
AugmentResult apply_policy(const EventStream &stream, const AugmentPolicy &policy, RngState &rng);

}  // namespace eventdrop
