#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "eventdrop/augment.hpp"
#include "eventdrop/represent.hpp"
#include "reference.hpp"

namespace eventdrop {
namespace {

void expect_matches(const TensorGrid &grid, const reference::Dense &ref, double rel_tol) {
  ASSERT_EQ(std::vector<std::size_t>(grid.shape().begin(), grid.shape().end()), ref.shape);
  double scale = 0.0;
  for (double v : ref.values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    if (rel_tol == 0.0) {
      ASSERT_EQ(static_cast<double>(grid.data()[i]), ref.values[i]) << "cell " << i;
    } else {
      ASSERT_LE(std::abs(grid.data()[i] - ref.values[i]), rel_tol * std::max(scale, 1.0)) << "cell " << i;
    }
  }
}

TEST(EventFrame, CountsPerPixel) {
  const EventStream s(SensorGeometry(3, 3), {{0, 0, 0, 1}, {0, 0, 1, -1}, {1, 2, 2, 1}});
  const TensorGrid g = build_event_frame(s);
  EXPECT_EQ(g.at({0, 0}), 2.0f);
  EXPECT_EQ(g.at({2, 1}), 1.0f);
  EXPECT_EQ(g.sum(), 3.0);
  EXPECT_EQ(g.axes()[0], Axis::Y);
}

TEST(EventFrame, EmptyIsZeroGrid) {
  const TensorGrid g = build_event_frame(EventStream(SensorGeometry(5, 4)));
  EXPECT_EQ(g.extent(0), 4u);
  EXPECT_EQ(g.extent(1), 5u);
  EXPECT_EQ(g.sum(), 0.0);
}

TEST(EventFrame, MatchesNaiveOracle) {
  RngState rng(20);
  const EventStream s = reference::random_stream(rng, 10000, SensorGeometry(23, 17));
  expect_matches(build_event_frame(s), reference::event_frame(s), 0.0);
}

TEST(EventCount, PolarityChannels) {
  const EventStream s(SensorGeometry(3, 3), {{1, 1, 0, 1}});
  const TensorGrid g = build_event_count(s);
  EXPECT_EQ(g.at({1, 1, 1}), 1.0f);
  for (std::size_t y = 0; y < 3; ++y) {
    for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(g.at({0, y, x}), 0.0f);
  }
}

TEST(EventCount, ChannelSumIsEventFrameAndPositiveCount) {
  RngState rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const EventStream s = reference::random_stream(rng, 3000, SensorGeometry(19, 11));
    const TensorGrid count = build_event_count(s);
    const TensorGrid frame = build_event_frame(s);
    const std::size_t plane = frame.size();
    double positive = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      ASSERT_EQ(count.data()[i] + count.data()[plane + i], frame.data()[i]);
      positive += count.data()[plane + i];
    }
    EXPECT_EQ(positive, static_cast<double>(stream_stats(s).positive_count));
    expect_matches(count, reference::event_count(s), 0.0);
  }
}

TEST(VoxelGrid, ClosedFirstBin) {
  // dT = 1.5: bin 0 = [0, 1.5] holds t = 0, 1; bin 1 = (1.5, 3] holds t = 2, 3.
  const EventStream s(SensorGeometry(2, 1), {{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 0, 2, 1}, {0, 0, 3, 1}});
  const TensorGrid g = build_voxel_grid(s, {2});
  EXPECT_EQ(g.at({0, 0, 0}), 2.0f);
  EXPECT_EQ(g.at({1, 0, 0}), 2.0f);
  expect_matches(g, reference::voxel_grid(s, 2), 0.0);
}

TEST(VoxelGrid, EventOnInteriorEdgeGoesToEarlierBin) {
  // D = 9, C = 3: edges at 3 and 6, intervals are closed on the right.
  const EventStream s(SensorGeometry(1, 1), {{0, 0, 0, 1}, {0, 0, 3, 1}, {0, 0, 4, 1}, {0, 0, 6, 1}, {0, 0, 9, 1}});
  const TensorGrid g = build_voxel_grid(s, {3});
  EXPECT_EQ(g.at({0, 0, 0}), 2.0f);
  EXPECT_EQ(g.at({1, 0, 0}), 2.0f);
  EXPECT_EQ(g.at({2, 0, 0}), 1.0f);
}

TEST(VoxelGrid, SingleEventAndZeroDuration) {
  const EventStream one(SensorGeometry(4, 4), {{2, 3, 50, -1}});
  for (std::uint32_t c : {1u, 4u, 9u}) {
    const TensorGrid g = build_voxel_grid(one, {c});
    EXPECT_EQ(g.sum(), 1.0);
    EXPECT_EQ(g.at({0, 3, 2}), 1.0f);
  }
  const EventStream burst(SensorGeometry(4, 4), {{0, 0, 5, 1}, {1, 1, 5, 1}});
  const TensorGrid g = build_voxel_grid(burst, {4});
  EXPECT_EQ(g.at({0, 0, 0}) + g.at({0, 1, 1}), 2.0f);
}

TEST(VoxelGrid, OneBinEqualsEventFrame) {
  RngState rng(22);
  const EventStream s = reference::random_stream(rng, 5000, SensorGeometry(31, 7));
  const TensorGrid v = build_voxel_grid(s, {1});
  const TensorGrid f = build_event_frame(s);
  EXPECT_TRUE(std::equal(v.data().begin(), v.data().end(), f.data().begin()));
}

TEST(VoxelGrid, MatchesNaiveOracle) {
  RngState rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto bins = static_cast<std::uint32_t>(1 + rng.uniform_below(16));
    // Small time ranges make many events land exactly on bin edges.
    const EventStream s = reference::random_stream(rng, 1500, SensorGeometry(13, 9), trial % 2 ? 37 : 1'000'003);
    expect_matches(build_voxel_grid(s, {bins}), reference::voxel_grid(s, bins), 0.0);
  }
}

TEST(TrilinearKernel, ClosedForm) {
  EXPECT_DOUBLE_EQ(trilinear_kernel(0, 0, 0.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(trilinear_kernel(0, 0, 5.0, 10.0), 0.5);
  EXPECT_DOUBLE_EQ(trilinear_kernel(0, 0, -5.0, 10.0), 0.5);
  EXPECT_DOUBLE_EQ(trilinear_kernel(1, 0, 0.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(trilinear_kernel(0, -1, 0.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(trilinear_kernel(0, 0, 20.0, 10.0), 0.0);
  EXPECT_THROW(trilinear_kernel(0, 0, 0.0, 0.0), Error);
}

TEST(TrilinearKernel, PartitionOfUnityInInterior) {
  RngState rng(24);
  const double t1 = 1000.0, bin = 123.25;
  const std::size_t bins = 9;
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform_real(t1 + bin, t1 + bins * bin - bin);
    double total = 0.0;
    for (std::size_t n = 0; n < bins; ++n) total += trilinear_kernel(0, 0, t1 + (n + 1) * bin - t, bin);
    EXPECT_NEAR(total, 1.0, 1e-6);
  }
}

TEST(Est, FirstEventContributesNothing) {
  const EventStream s(SensorGeometry(2, 2), {{0, 0, 100, 1}, {1, 1, 200, -1}});
  const TensorGrid g = build_est(s, {9});
  for (std::size_t c = 0; c < 9; ++c) EXPECT_EQ(g.at({1, c, 0, 0}), 0.0f);
}

TEST(Est, SingleEventIsZeroDuration) {
  const EventStream s(SensorGeometry(2, 2), {{0, 0, 100, 1}});
  try {
    build_est(s, {9});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::ZeroDuration);
  }
  EXPECT_EQ(build_est(EventStream(SensorGeometry(2, 2)), {9}).sum(), 0.0);
}

TEST(Est, EventOnBinCentreHitsOneBin) {
  // t_1 = 0, t_I = 9, C = 9 -> dT = 1 and t_n = n + 1. An event at t = 4 = t_3
  // has f = 4 and weight 1 in bin 3, 0 in bins 2 and 4.
  const EventStream s(SensorGeometry(3, 1), {{0, 0, 0, -1}, {1, 0, 4, 1}, {2, 0, 9, -1}});
  const TensorGrid g = build_est(s, {9});
  EXPECT_FLOAT_EQ(g.at({1, 3, 0, 1}), 4.0f);
  EXPECT_EQ(g.at({1, 2, 0, 1}), 0.0f);
  EXPECT_EQ(g.at({1, 4, 0, 1}), 0.0f);
  // The last event sits on the last centre with f = C.
  EXPECT_FLOAT_EQ(g.at({0, 8, 0, 2}), 9.0f);
}

TEST(Est, MatchesNaiveOracle) {
  RngState rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const EventStream s = reference::random_stream(rng, 800, SensorGeometry(11, 7), trial % 3 ? 999'999 : 90);
    if (s.duration() == 0) continue;
    expect_matches(build_est(s, {9}), reference::est(s, 9), 1e-5);
    GridConfig by_duration{5, EstNormalization::Duration};
    expect_matches(build_est(s, by_duration), reference::est(s, 5, true), 1e-5);
  }
}

TEST(Representations, PermutingEqualTimestampsChangesNothing) {
  RngState rng(26);
  const EventStream s = reference::random_stream(rng, 4000, SensorGeometry(10, 10), 50);
  std::vector<Event> shuffled(s.events().begin(), s.events().end());
  // Reverse every run of equal timestamps.
  for (std::size_t i = 0; i < shuffled.size();) {
    std::size_t j = i;
    while (j < shuffled.size() && shuffled[j].t == shuffled[i].t) ++j;
    std::reverse(shuffled.begin() + static_cast<long>(i), shuffled.begin() + static_cast<long>(j));
    i = j;
  }
  const EventStream p(s.geometry(), shuffled);
  ASSERT_NE(p, s);
  for (auto repr : {Representation::EventFrame, Representation::EventCount, Representation::VoxelGrid,
                    Representation::Est}) {
    EXPECT_EQ(build_representation(s, repr), build_representation(p, repr)) << representation_name(repr);
  }
}

TEST(Representations, DropIsMonotoneOnEventFrame) {
  RngState rng(27);
  const EventStream s = reference::random_stream(rng, 3000, SensorGeometry(12, 12));
  const TensorGrid before = build_event_frame(s);
  for (int i = 0; i < 100; ++i) {
    const TensorGrid after = build_event_frame(apply_policy(s, AugmentPolicy::uniform(), rng).stream);
    for (std::size_t c = 0; c < before.size(); ++c) ASSERT_LE(after.data()[c], before.data()[c]);
  }
}

TEST(FlattenChannels, AxisArithmetic) {
  const TensorGrid est({Axis::Polarity, Axis::TimeBin, Axis::Y, Axis::X}, {2, 9, 4, 5});
  const TensorGrid flat = flatten_channels(est);
  EXPECT_EQ(flat.extent(0), 18u);
  EXPECT_EQ(flat.axes()[0], Axis::Channel);

  TensorGrid frame({Axis::Y, Axis::X}, {4, 5});
  frame.at({3, 4}) = 2.0f;
  const TensorGrid f = flatten_channels(frame);
  EXPECT_EQ(f.rank(), 3u);
  EXPECT_EQ(f.extent(0), 1u);
  EXPECT_EQ(f.at({0, 3, 4}), 2.0f);

  RngState rng(28);
  const EventStream s = reference::random_stream(rng, 500, SensorGeometry(6, 4));
  const TensorGrid voxel = build_voxel_grid(s, {3});
  const TensorGrid v = flatten_channels(voxel);
  EXPECT_EQ(v.extent(0), 3u);
  EXPECT_TRUE(std::equal(v.data().begin(), v.data().end(), voxel.data().begin()));

  // Polarity-major: channel c*bins + n holds (polarity c, bin n).
  const TensorGrid e = build_est(s, {3});
  const TensorGrid ef = flatten_channels(e);
  EXPECT_EQ(ef.at({1 * 3 + 2, 1, 2}), e.at({1, 2, 1, 2}));

  EXPECT_THROW(flatten_channels(TensorGrid({Axis::X, Axis::Y}, {2, 2})), Error);
}

}  // namespace
}  // namespace eventdrop
