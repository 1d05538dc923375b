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
#include <string_view>

namespace eventdrop {

/// Portable deterministic generator (xoshiro256** seeded through splitmix64).
///
/// All distributions are implemented here rather than taken from <random>, so
/// a given seed produces the same draws on every platform and standard library.
class RngState {
 public:
  explicit RngState(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t draws() const noexcept { return draws_; }

  std::uint64_t next_u64() noexcept;

  /// Unbiased integer in [0, bound); bound must be >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;
  /// Unbiased integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
  /// 53-bit uniform in [0, 1).
  double uniform_unit() noexcept;
  /// lo + (hi - lo) * uniform_unit().
  double uniform_real(double lo, double hi) noexcept;

  /// Child generator seeded from the next draw of this one.
  RngState split() noexcept;

  friend bool operator==(const RngState &, const RngState &) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t &state) noexcept;

/// Seed for augmentation k of the sample at `sample_path`. Depends only on its
/// arguments so that results are independent of worker scheduling.
std::uint64_t derive_seed_value(std::uint64_t master, std::string_view sample_path,
                                std::uint64_t k) noexcept;

inline RngState derive_seed(std::uint64_t master, std::string_view sample_path,
                            std::uint64_t k) noexcept {
  return RngState(derive_seed_value(master, sample_path, k));
}

}  // namespace eventdrop
