// Naive reference builders and random generators shared by the unit and
// acceptance suites. These follow the per-pixel / per-bin definitions
// literally and never call into the optimized builders.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "eventdrop/core.hpp"
#include "eventdrop/rng.hpp"

namespace eventdrop::reference {

struct Dense {
  std::vector<std::size_t> shape;
  std::vector<double> values;
};

inline int delta(std::int64_t a) { return a == 0 ? 1 : 0; }

// V(x_l, y_m) = sum_i delta(x_l - x_i) delta(y_m - y_i), evaluated cell by cell.
inline Dense event_frame(const EventStream &s) {
  const std::size_t h = s.geometry().height(), w = s.geometry().width();
  Dense d{{h, w}, std::vector<double>(h * w, 0.0)};
  for (std::size_t ym = 0; ym < h; ++ym) {
    for (std::size_t xl = 0; xl < w; ++xl) {
      std::int64_t count = 0;
      for (const Event &e : s.events()) {
        count += delta(static_cast<std::int64_t>(xl) - e.x) * delta(static_cast<std::int64_t>(ym) - e.y);
      }
      d.values[ym * w + xl] = static_cast<double>(count);
    }
  }
  return d;
}

inline Dense event_count(const EventStream &s) {
  const std::size_t h = s.geometry().height(), w = s.geometry().width();
  Dense d{{2, h, w}, std::vector<double>(2 * h * w, 0.0)};
  for (int channel = 0; channel < 2; ++channel) {
    const int polarity = channel == 0 ? -1 : 1;
    for (const Event &e : s.events()) {
      if (e.p != polarity) continue;
      for (std::size_t ym = 0; ym < h; ++ym) {
        for (std::size_t xl = 0; xl < w; ++xl) {
          d.values[(channel * h + ym) * w + xl] +=
              delta(static_cast<std::int64_t>(xl) - e.x) * delta(static_cast<std::int64_t>(ym) - e.y);
        }
      }
    }
  }
  return d;
}

// An event belongs to bin n when t_{n-1} < t <= t_n, with t_n = t_1 + (n+1) D / C.
// Compared as n D < (t - t_1) C <= (n+1) D in exact integers; bin 0 also takes t_1.
inline Dense voxel_grid(const EventStream &s, std::uint32_t bins) {
  const std::size_t h = s.geometry().height(), w = s.geometry().width();
  Dense d{{bins, h, w}, std::vector<double>(bins * h * w, 0.0)};
  const unsigned __int128 D = s.duration();
  for (const Event &e : s.events()) {
    const unsigned __int128 scaled = static_cast<unsigned __int128>(e.t - s.t_first()) * bins;
    for (std::uint32_t n = 0; n < bins; ++n) {
      bool in_bin;
      if (D == 0) {
        in_bin = n == 0;
      } else if (n == 0) {
        in_bin = scaled <= D;
      } else {
        in_bin = scaled > n * D && scaled <= (n + 1) * D;
      }
      if (in_bin) d.values[(n * h + e.y) * w + e.x] += 1.0;
    }
  }
  return d;
}

inline long double kernel(long double dt, long double bin) {
  const long double v = 1.0L - std::fabs(dt / bin);
  return v > 0 ? v : 0.0L;
}

// Double loop over (events x bins) with t_n computed explicitly.
inline Dense est(const EventStream &s, std::uint32_t bins, bool normalize_by_duration = false) {
  const std::size_t h = s.geometry().height(), w = s.geometry().width();
  Dense d{{2, bins, h, w}, std::vector<double>(2 * bins * h * w, 0.0)};
  std::vector<long double> acc(d.values.size(), 0.0L);
  const long double t1 = s.t_first();
  const long double duration = s.duration();
  const long double bin = duration / bins;
  for (const Event &e : s.events()) {
    const long double f = (e.t - t1) / (normalize_by_duration ? duration : bin);
    const std::size_t channel = e.p > 0 ? 1 : 0;
    for (std::uint32_t n = 0; n < bins; ++n) {
      const long double tn = t1 + (n + 1) * bin;
      acc[((channel * bins + n) * h + e.y) * w + e.x] += f * kernel(tn - e.t, bin);
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i) d.values[i] = static_cast<double>(acc[i]);
  return d;
}

// Random stream with duplicated timestamps and bursts, sorted.
inline EventStream random_stream(RngState &rng, std::size_t count, SensorGeometry g,
                                 Timestamp max_t = 1'000'000) {
  std::vector<Event> events(count);
  const Timestamp base = rng.uniform_below(1000);
  for (auto &e : events) {
    e.x = static_cast<std::uint16_t>(rng.uniform_below(g.width()));
    e.y = static_cast<std::uint16_t>(rng.uniform_below(g.height()));
    // Coarse timestamps every so often so equal-t runs appear.
    e.t = base + (rng.uniform_below(4) == 0 ? rng.uniform_below(16) * (max_t / 16)
                                            : rng.uniform_below(max_t + 1));
    e.p = rng.uniform_below(2) ? 1 : -1;
  }
  return validate_stream(std::move(events), g);
}

}  // namespace eventdrop::reference
