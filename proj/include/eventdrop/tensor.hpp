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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace eventdrop {

/// Named tensor axis. The numeric value is the on-disk tag in ETNS files.
enum class Axis : std::uint8_t { Polarity = 0, TimeBin = 1, Y = 2, X = 3, Channel = 4 };

std::string_view axis_name(Axis axis) noexcept;
std::optional<Axis> axis_from_tag(std::uint8_t tag) noexcept;

/// Dense float32 array with named axes, row-major (last axis fastest).
class TensorGrid {
 public:
  /// Zero-filled grid. Throws UnsupportedShape on rank mismatch or a zero extent.
  TensorGrid(std::vector<Axis> axes, std::vector<std::size_t> shape);
  TensorGrid(std::vector<Axis> axes, std::vector<std::size_t> shape, std::vector<float> data);

  std::size_t rank() const noexcept { return shape_.size(); }
  std::span<const Axis> axes() const noexcept { return axes_; }
  std::span<const std::size_t> shape() const noexcept { return shape_; }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  /// Row-major flat offset of a full index tuple.
  std::size_t offset(std::initializer_list<std::size_t> index) const;
  float at(std::initializer_list<std::size_t> index) const { return data_[offset(index)]; }
  float &at(std::initializer_list<std::size_t> index) { return data_[offset(index)]; }

  double sum() const noexcept;

  friend bool operator==(const TensorGrid &, const TensorGrid &) = default;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> shape_;
  std::vector<float> data_;
};

}  // namespace eventdrop
