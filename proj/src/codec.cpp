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
#include "eventdrop/codec.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace eventdrop {
namespace {

constexpr std::uint8_t kEtnsVersion = 1;
constexpr std::uint8_t kDtypeFloat32 = 1;
constexpr std::size_t kMaxRank = 8;
constexpr char kNpyMagic[] = "\x93NUMPY";
constexpr std::size_t kNpyMagicLen = 6;

void put_u16(Bytes &out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u64(Bytes &out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> in) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= std::uint64_t{in[b]} << (8 * b);
  return v;
}

void append_payload(Bytes &out, std::span<const float> data) {
  out.reserve(out.size() + data.size() * 4);
  for (float f : data) {
    const auto bits = std::bit_cast<std::uint32_t>(f);
    out.push_back(static_cast<std::uint8_t>(bits));
    out.push_back(static_cast<std::uint8_t>(bits >> 8));
    out.push_back(static_cast<std::uint8_t>(bits >> 16));
    out.push_back(static_cast<std::uint8_t>(bits >> 24));
  }
}

std::vector<float> decode_payload(std::span<const std::uint8_t> in, std::size_t count) {
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t *b = in.data() + 4 * i;
    const std::uint32_t bits = std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 |
                               std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
    data[i] = std::bit_cast<float>(bits);
  }
  return data;
}

// Payload must be exactly count * 4 bytes; checked before anything is allocated.
std::size_t checked_count(std::span<const std::size_t> shape, std::size_t payload_bytes) {
  std::size_t n = 1;
  for (std::size_t extent : shape) {
    if (extent == 0) throw Error(Errc::MalformedHeader, "zero-length axis");
    if (n > payload_bytes / extent) throw Error(Errc::TruncatedFile, "shape exceeds payload");
    n *= extent;
  }
  if (n * 4 > payload_bytes) throw Error(Errc::TruncatedFile, "payload shorter than shape");
  if (n * 4 < payload_bytes) throw Error(Errc::MalformedHeader, "trailing bytes after payload");
  return n;
}

std::vector<Axis> infer_axes(std::size_t rank) {
  switch (rank) {
    case 1: return {Axis::X};
    case 2: return {Axis::Y, Axis::X};
    case 3: return {Axis::Channel, Axis::Y, Axis::X};
    case 4: return {Axis::Polarity, Axis::TimeBin, Axis::Y, Axis::X};
    default: throw Error(Errc::UnsupportedShape, "cannot name axes of rank " + std::to_string(rank));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char *name) {
  field = trim(field);
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, std::string("bad ") + name + " value '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

EventStream read_atis_bin(std::span<const std::uint8_t> bytes, SensorGeometry geometry) {
  if (bytes.size() % kAtisRecordSize != 0) {
    throw Error(Errc::TruncatedFile, std::to_string(bytes.size()) +
                                         " bytes is not a whole number of 5-byte records");
  }
  std::vector<RawEvent> raw;
  raw.reserve(bytes.size() / kAtisRecordSize);
  for (std::size_t off = 0; off < bytes.size(); off += kAtisRecordSize) {
    const std::uint8_t *r = bytes.data() + off;
    RawEvent e;
    e.x = r[0];
    e.y = r[1];
    e.p = (r[2] & 0x80) ? 1 : -1;
    e.t = (Timestamp{r[2] & 0x7Fu} << 16) | (Timestamp{r[3]} << 8) | Timestamp{r[4]};
    raw.push_back(e);
  }
  return validate_stream(raw, geometry);
}

Bytes write_atis_bin(const EventStream &stream) {
  Bytes out;
  out.reserve(stream.size() * kAtisRecordSize);
  for (const Event &e : stream.events()) {
    if (e.x > 0xFF || e.y > 0xFF || e.t > kAtisMaxTimestamp) {
      throw Error(Errc::FieldOverflow, "event (" + std::to_string(e.x) + ", " +
                                           std::to_string(e.y) + ", t=" + std::to_string(e.t) +
                                           ") does not fit the ATIS record");
    }
    out.push_back(static_cast<std::uint8_t>(e.x));
    out.push_back(static_cast<std::uint8_t>(e.y));
    out.push_back(static_cast<std::uint8_t>((e.p > 0 ? 0x80 : 0x00) | ((e.t >> 16) & 0x7F)));
    out.push_back(static_cast<std::uint8_t>(e.t >> 8));
    out.push_back(static_cast<std::uint8_t>(e.t));
  }
  return out;
}

EventStream read_csv(std::string_view text, SensorGeometry geometry) {
  std::vector<RawEvent> raw;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != "x,y,t,p") throw ParseError(line_no, "expected header 'x,y,t,p'");
      seen_header = true;
      continue;
    }
    std::string_view fields[4];
    std::size_t n = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      if (n == 4) throw ParseError(line_no, "too many columns");
      fields[n++] = line.substr(0, comma);
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (n != 4) throw ParseError(line_no, "expected 4 columns, got " + std::to_string(n));
    RawEvent e;
    e.x = parse_field<std::int64_t>(fields[0], line_no, "x");
    e.y = parse_field<std::int64_t>(fields[1], line_no, "y");
    e.t = parse_field<Timestamp>(fields[2], line_no, "t");
    e.p = parse_field<int>(fields[3], line_no, "p");
    if (e.p == 0) e.p = -1;
    raw.push_back(e);
  }
  if (!seen_header) throw ParseError(1, "missing header 'x,y,t,p'");
  return validate_stream(raw, geometry);
}

std::string write_csv(const EventStream &stream) {
  std::string out = "x,y,t,p\n";
  out.reserve(out.size() + stream.size() * 24);
  for (const Event &e : stream.events()) {
    out += std::to_string(e.x);
    out += ',';
    out += std::to_string(e.y);
    out += ',';
    out += std::to_string(e.t);
    out += e.p > 0 ? ",1\n" : ",-1\n";
  }
  return out;
}

Bytes tensor_payload(const TensorGrid &grid) {
  Bytes out;
  append_payload(out, grid.data());
  return out;
}

Bytes write_tensor(const TensorGrid &grid, TensorFormat format) {
  Bytes out;
  if (format == TensorFormat::Native) {
    out = {'E', 'T', 'N', 'S', kEtnsVersion, kDtypeFloat32, static_cast<std::uint8_t>(grid.rank())};
    for (std::size_t extent : grid.shape()) put_u64(out, extent);
    for (Axis a : grid.axes()) out.push_back(static_cast<std::uint8_t>(a));
  } else {
    std::string header = "{'descr': '<f4', 'fortran_order': False, 'shape': (";
    for (std::size_t i = 0; i < grid.rank(); ++i) {
      header += std::to_string(grid.extent(i));
      if (i + 1 < grid.rank() || grid.rank() == 1) header += ",";
      if (i + 1 < grid.rank()) header += " ";
    }
    header += "), }";
    // Preamble (10 bytes) + header + '\n' is padded to a multiple of 64.
    const std::size_t unpadded = kNpyMagicLen + 4 + header.size() + 1;
    header.append((64 - unpadded % 64) % 64, ' ');
    header += '\n';
    out.insert(out.end(), kNpyMagic, kNpyMagic + kNpyMagicLen);
    out.push_back(1);
    out.push_back(0);
    put_u16(out, static_cast<std::uint16_t>(header.size()));
    out.insert(out.end(), header.begin(), header.end());
  }
  append_payload(out, grid.data());
  return out;
}

TensorGrid read_etns(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 7) throw Error(Errc::TruncatedFile, "ETNS header incomplete");
  if (std::memcmp(bytes.data(), "ETNS", 4) != 0) throw Error(Errc::MalformedHeader, "bad magic");
  if (bytes[4] != kEtnsVersion) {
    throw Error(Errc::MalformedHeader, "unsupported ETNS version " + std::to_string(bytes[4]));
  }
  if (bytes[5] != kDtypeFloat32) {
    throw Error(Errc::UnsupportedDtype, "dtype tag " + std::to_string(bytes[5]));
  }
  const std::size_t rank = bytes[6];
  if (rank == 0 || rank > kMaxRank) {
    throw Error(Errc::MalformedHeader, "axis count " + std::to_string(rank));
  }
  std::size_t off = 7;
  if (bytes.size() < off + rank * 9) throw Error(Errc::TruncatedFile, "ETNS header incomplete");
  std::vector<std::size_t> shape(rank);
  for (std::size_t i = 0; i < rank; ++i, off += 8) {
    const std::uint64_t extent = get_u64(bytes.subspan(off, 8));
    if (extent > SIZE_MAX) throw Error(Errc::MalformedHeader, "extent too large");
    shape[i] = static_cast<std::size_t>(extent);
  }
  std::vector<Axis> axes(rank);
  for (std::size_t i = 0; i < rank; ++i, ++off) {
    const auto axis = axis_from_tag(bytes[off]);
    if (!axis) throw Error(Errc::MalformedHeader, "unknown axis tag " + std::to_string(bytes[off]));
    axes[i] = *axis;
  }
  const std::size_t count = checked_count(shape, bytes.size() - off);
  return TensorGrid(std::move(axes), std::move(shape), decode_payload(bytes.subspan(off), count));
}

TensorGrid read_npy(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 10) throw Error(Errc::TruncatedFile, "NPY preamble incomplete");
  if (std::memcmp(bytes.data(), kNpyMagic, kNpyMagicLen) != 0) {
    throw Error(Errc::MalformedHeader, "bad magic");
  }
  const std::uint8_t major = bytes[6];
  std::size_t header_len = 0;
  std::size_t off = 0;
  if (major == 1) {
    header_len = std::size_t{bytes[8]} | std::size_t{bytes[9]} << 8;
    off = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) throw Error(Errc::TruncatedFile, "NPY preamble incomplete");
    header_len = std::size_t{bytes[8]} | std::size_t{bytes[9]} << 8 |
                 std::size_t{bytes[10]} << 16 | std::size_t{bytes[11]} << 24;
    off = 12;
  } else {
    throw Error(Errc::MalformedHeader, "unsupported NPY version " + std::to_string(major));
  }
  if (bytes.size() - off < header_len) throw Error(Errc::TruncatedFile, "NPY header incomplete");
  const std::string_view header(reinterpret_cast<const char *>(bytes.data() + off), header_len);
  off += header_len;

  const auto value_after = [&](std::string_view key) -> std::string_view {
    const std::size_t k = header.find(key);
    if (k == std::string_view::npos) {
      throw Error(Errc::MalformedHeader, "NPY header lacks " + std::string(key));
    }
    std::string_view rest = header.substr(k + key.size());
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) throw Error(Errc::MalformedHeader, "NPY header syntax");
    return trim(rest.substr(colon + 1));
  };

  const std::string_view descr = value_after("'descr'");
  if (!descr.starts_with("'<f4'")) {
    throw Error(Errc::UnsupportedDtype, "NPY descr " + std::string(descr.substr(0, 8)));
  }
  const std::string_view order = value_after("'fortran_order'");
  if (order.starts_with("True")) throw Error(Errc::UnsupportedDtype, "fortran-ordered NPY");
  if (!order.starts_with("False")) throw Error(Errc::MalformedHeader, "NPY fortran_order syntax");

  std::string_view tuple = value_after("'shape'");
  if (tuple.empty() || tuple.front() != '(') throw Error(Errc::MalformedHeader, "NPY shape syntax");
  const std::size_t close = tuple.find(')');
  if (close == std::string_view::npos) throw Error(Errc::MalformedHeader, "NPY shape syntax");
  tuple = tuple.substr(1, close - 1);
  std::vector<std::size_t> shape;
  while (!tuple.empty()) {
    const std::size_t comma = tuple.find(',');
    const std::string_view item = trim(tuple.substr(0, comma));
    tuple.remove_prefix(comma == std::string_view::npos ? tuple.size() : comma + 1);
    if (item.empty()) {
      if (tuple.empty()) break;
      throw Error(Errc::MalformedHeader, "NPY shape syntax");
    }
    std::size_t extent = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), extent);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(Errc::MalformedHeader, "NPY shape entry '" + std::string(item) + "'");
    }
    shape.push_back(extent);
    if (shape.size() > kMaxRank) throw Error(Errc::MalformedHeader, "NPY rank too large");
  }
  auto axes = infer_axes(shape.size());
  const std::size_t count = checked_count(shape, bytes.size() - off);
  return TensorGrid(std::move(axes), std::move(shape), decode_payload(bytes.subspan(off), count));
}

TensorGrid read_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "ETNS", 4) == 0) return read_etns(bytes);
  if (bytes.size() >= kNpyMagicLen && std::memcmp(bytes.data(), kNpyMagic, kNpyMagicLen) == 0) {
    return read_npy(bytes);
  }
  throw Error(Errc::MalformedHeader, "neither ETNS nor NPY magic");
}

Bytes read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::Io, "read failed on " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, "write failed on " + path.string());
}

}  // namespace eventdrop
