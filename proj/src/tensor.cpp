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
#include "eventdrop/tensor.hpp"

#include <cmath>
#include <string>

#include "eventdrop/error.hpp"

namespace eventdrop {
namespace {

std::size_t element_count(const std::vector<Axis> &axes, const std::vector<std::size_t> &shape) {
  if (axes.size() != shape.size() || shape.empty()) {
    throw Error(Errc::UnsupportedShape, "axis names and extents disagree");
  }
  std::size_t n = 1;
  for (std::size_t extent : shape) {
    if (extent == 0) throw Error(Errc::UnsupportedShape, "zero-length axis");
    if (n > SIZE_MAX / extent) throw Error(Errc::UnsupportedShape, "element count overflows");
    n *= extent;
  }
  return n;
}

}  // namespace

std::string_view axis_name(Axis axis) noexcept {
  switch (axis) {
    case Axis::Polarity: return "polarity";
    case Axis::TimeBin: return "time_bin";
    case Axis::Y: return "y";
    case Axis::X: return "x";
    case Axis::Channel: return "channel";
  }
  return "?";
}

std::optional<Axis> axis_from_tag(std::uint8_t tag) noexcept {
  if (tag > static_cast<std::uint8_t>(Axis::Channel)) return std::nullopt;
  return static_cast<Axis>(tag);
}

TensorGrid::TensorGrid(std::vector<Axis> axes, std::vector<std::size_t> shape)
    : axes_(std::move(axes)), shape_(std::move(shape)) {
  data_.assign(element_count(axes_, shape_), 0.0f);
}

TensorGrid::TensorGrid(std::vector<Axis> axes, std::vector<std::size_t> shape,
                       std::vector<float> data)
    : axes_(std::move(axes)), shape_(std::move(shape)), data_(std::move(data)) {
  if (element_count(axes_, shape_) != data_.size()) {
    throw Error(Errc::UnsupportedShape, "payload has " + std::to_string(data_.size()) +
                                            " elements, shape wants a different count");
  }
  for (float v : data_) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "non-finite tensor value");
  }
}

std::size_t TensorGrid::offset(std::initializer_list<std::size_t> index) const {
  if (index.size() != shape_.size()) throw Error(Errc::InvalidArgument, "index rank mismatch");
  std::size_t off = 0;
  std::size_t axis = 0;
  for (std::size_t i : index) {
    if (i >= shape_[axis]) throw Error(Errc::InvalidArgument, "index out of range");
    off = off * shape_[axis] + i;
    ++axis;
  }
  return off;
}

double TensorGrid::sum() const noexcept {
  double total = 0.0;
  for (float v : data_) total += v;
  return total;
}

}  // namespace eventdrop
