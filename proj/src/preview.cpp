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
#include "eventdrop/preview.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <zlib.h>

namespace eventdrop {
namespace {

struct Planes {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> first;   // grayscale, or the negative channel
  std::vector<double> second;  // positive channel; empty for grayscale
};

// Sums the time axis away and splits polarity into planes.
Planes reduce(const TensorGrid &grid) {
  const auto axes = grid.axes();
  const std::size_t rank = grid.rank();
  if (rank < 2 || axes[rank - 2] != Axis::Y || axes[rank - 1] != Axis::X) {
    throw Error(Errc::UnsupportedShape, "preview needs trailing [y, x] axes");
  }
  Planes out;
  out.height = grid.extent(rank - 2);
  out.width = grid.extent(rank - 1);
  const std::size_t plane = out.height * out.width;

  std::size_t polarities = 1;
  std::size_t layers = 1;
  for (std::size_t i = 0; i + 2 < rank; ++i) {
    const std::size_t n = grid.extent(i);
    if (axes[i] == Axis::Polarity && n == 2 && i == 0) {
      polarities = 2;
    } else if (axes[i] == Axis::TimeBin || (axes[i] == Axis::Channel && n == 1)) {
      layers *= n;
    } else {
      throw Error(Errc::UnsupportedShape, "cannot reduce axis " + std::string(axis_name(axes[i])) +
                                              " of length " + std::to_string(n));
    }
  }
  const auto data = grid.data();
  for (std::size_t pol = 0; pol < polarities; ++pol) {
    std::vector<double> sum(plane, 0.0);
    for (std::size_t layer = 0; layer < layers; ++layer) {
      const float *src = data.data() + (pol * layers + layer) * plane;
      for (std::size_t i = 0; i < plane; ++i) sum[i] += src[i];
    }
    (pol == 0 ? out.first : out.second) = std::move(sum);
  }
  return out;
}

std::uint8_t scale(double v, double max) {
  if (max <= 0.0) return 0;
  return static_cast<std::uint8_t>(std::lround(std::clamp(v / max, 0.0, 1.0) * 255.0));
}

void put_be32(Bytes &out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_chunk(Bytes &out, const char type[4], const Bytes &body) {
  put_be32(out, static_cast<std::uint32_t>(body.size()));
  const std::size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), body.begin(), body.end());
  const uLong crc = crc32(0L, out.data() + type_at, static_cast<uInt>(body.size() + 4));
  put_be32(out, static_cast<std::uint32_t>(crc));
}

Bytes encode_png(std::size_t width, std::size_t height, int channels, const Bytes &pixels) {
  Bytes raw;
  raw.reserve(height * (width * channels + 1));
  for (std::size_t row = 0; row < height; ++row) {
    raw.push_back(0);  // filter: none
    const auto begin = pixels.begin() + static_cast<std::ptrdiff_t>(row * width * channels);
    raw.insert(raw.end(), begin, begin + static_cast<std::ptrdiff_t>(width * channels));
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  Bytes packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK) {
    throw Error(Errc::Io, "zlib compression failed");
  }
  packed.resize(packed_size);

  Bytes png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  Bytes ihdr;
  put_be32(ihdr, static_cast<std::uint32_t>(width));
  put_be32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(8);
  ihdr.push_back(channels == 1 ? 0 : 2);
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  put_chunk(png, "IHDR", ihdr);
  put_chunk(png, "IDAT", packed);
  put_chunk(png, "IEND", {});
  return png;
}

}  // namespace

Bytes render_preview(const TensorGrid &grid) {
  const Planes planes = reduce(grid);
  const std::size_t n = planes.height * planes.width;
  if (planes.second.empty()) {
    const double max = *std::max_element(planes.first.begin(), planes.first.end());
    Bytes gray(n);
    for (std::size_t i = 0; i < n; ++i) gray[i] = scale(planes.first[i], max);
    return encode_png(planes.width, planes.height, 1, gray);
  }
  const double max = std::max(*std::max_element(planes.first.begin(), planes.first.end()),
                              *std::max_element(planes.second.begin(), planes.second.end()));
  Bytes rgb(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const int neg = scale(planes.first[i], max);
    const int pos = scale(planes.second[i], max);
    // White minus cyan for positive (-> red) and minus yellow for negative (-> blue).
    rgb[3 * i + 0] = static_cast<std::uint8_t>(std::max(0, 255 - neg));
    rgb[3 * i + 1] = static_cast<std::uint8_t>(std::max(0, 255 - neg - pos));
    rgb[3 * i + 2] = static_cast<std::uint8_t>(std::max(0, 255 - pos));
  }
  return encode_png(planes.width, planes.height, 3, rgb);
}

}  // namespace eventdrop
