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
#include "eventdrop/augment.hpp"

#include <cmath>
#include <string>

namespace eventdrop {
namespace {

int denominator_for(DropOp op) {
  switch (op) {
    case DropOp::RandomDrop:
    case DropOp::DropByTime: return 10;
    case DropOp::DropByArea: return 20;
    case DropOp::Identity: break;
  }
  throw Error(Errc::InvalidArgument, "identity has no magnitude");
}

template <typename Keep>
EventStream filter(const EventStream &stream, Keep keep) {
  std::vector<Event> out;
  out.reserve(stream.size());
  for (const Event &e : stream.events()) {
    if (keep(e)) out.push_back(e);
  }
  return EventStream(stream.geometry(), std::move(out));
}

AppliedOpRecord start_record(DropOp op, const EventStream &stream, const RngState &rng) {
  AppliedOpRecord r;
  r.op = op;
  r.seed = rng.seed();
  r.draws = rng.draws();
  r.events_before = stream.size();
  return r;
}

AugmentResult finish(AppliedOpRecord record, EventStream out, const RngState &rng) {
  record.draws = rng.draws() - record.draws;
  record.events_after = out.size();
  return AugmentResult{std::move(out), record};
}

}  // namespace

std::string_view op_name(DropOp op) noexcept {
  switch (op) {
    case DropOp::Identity: return "identity";
    case DropOp::RandomDrop: return "random_drop";
    case DropOp::DropByTime: return "drop_by_time";
    case DropOp::DropByArea: return "drop_by_area";
  }
  return "?";
}

std::optional<DropOp> op_from_name(std::string_view name) noexcept {
  for (DropOp op : kAllDropOps) {
    if (op_name(op) == name) return op;
  }
  return std::nullopt;
}

Magnitude Magnitude::for_op(DropOp op, int level) {
  const int count = level_count(op);
  if (level < 1 || level > count) {
    throw Error(Errc::InvalidArgument, std::string(op_name(op)) + " has no magnitude level " +
                                           std::to_string(level));
  }
  return Magnitude(level, denominator_for(op));
}

int Magnitude::level_count(DropOp op) noexcept {
  switch (op) {
    case DropOp::RandomDrop:
    case DropOp::DropByTime: return 9;
    case DropOp::DropByArea: return 5;
    case DropOp::Identity: return 0;
  }
  return 0;
}

AugmentPolicy::AugmentPolicy(std::array<double, 4> probabilities) : probabilities_(probabilities) {
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(Errc::InvalidArgument, "op probabilities must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::InvalidArgument, "op probabilities sum to " + std::to_string(total));
  }
}

AugmentPolicy AugmentPolicy::only(DropOp op) {
  std::array<double, 4> p{};
  p[static_cast<std::size_t>(op)] = 1.0;
  return AugmentPolicy(p);
}

DropOp AugmentPolicy::select(RngState &rng) const noexcept {
  const double u = rng.uniform_unit();
  double cumulative = 0.0;
  DropOp last = DropOp::Identity;
  for (DropOp op : kAllDropOps) {
    const double p = probability(op);
    if (p <= 0.0) continue;
    cumulative += p;
    last = op;
    if (u < cumulative) return op;
  }
  return last;
}

std::size_t random_drop_keep_count(std::size_t count, Magnitude ratio) noexcept {
  const auto keep = static_cast<unsigned __int128>(count) *
                    static_cast<unsigned>(ratio.denominator() - ratio.level()) /
                    static_cast<unsigned>(ratio.denominator());
  return static_cast<std::size_t>(keep);
}

AugmentResult random_drop(const EventStream &stream, Magnitude ratio, RngState &rng) {
  AppliedOpRecord record = start_record(DropOp::RandomDrop, stream, rng);
  record.ratio = ratio;
  const std::size_t total = stream.size();
  const std::size_t keep = random_drop_keep_count(total, ratio);
  std::vector<Event> out;
  out.reserve(keep);
  // Selection sampling: event i is kept with probability (still needed)/(still left).
  std::size_t needed = keep;
  for (std::size_t i = 0; i < total && needed > 0; ++i) {
    if (rng.uniform_below(total - i) < needed) {
      out.push_back(stream[i]);
      --needed;
    }
  }
  return finish(record, EventStream(stream.geometry(), std::move(out)), rng);
}

EventStream drop_time_window(const EventStream &stream, const TimeWindow &window) {
  return filter(stream, [&](const Event &e) { return !window.contains(e.t); });
}

EventStream drop_area_region(const EventStream &stream, const AreaRegion &region) {
  return filter(stream, [&](const Event &e) { return !region.contains(e.x, e.y); });
}

AugmentResult drop_by_time(const EventStream &stream, Magnitude ratio, RngState &rng,
                           TimeWindowRule rule) {
  AppliedOpRecord record = start_record(DropOp::DropByTime, stream, rng);
  record.ratio = ratio;
  if (stream.empty() || stream.duration() == 0) return finish(record, stream, rng);
  const auto t1 = static_cast<double>(stream.t_first());
  const auto tI = static_cast<double>(stream.t_last());
  TimeWindow window;
  window.t_min = rng.uniform_real(t1, tI);
  const double end = window.t_min + ratio.value() * (tI - t1);
  window.t_max = rule == TimeWindowRule::Clip ? std::min(tI, end) : std::max(tI, end);
  record.window = window;
  return finish(record, drop_time_window(stream, window), rng);
}

AugmentResult drop_by_area(const EventStream &stream, Magnitude ratio, RngState &rng) {
  AppliedOpRecord record = start_record(DropOp::DropByArea, stream, rng);
  record.ratio = ratio;
  const SensorGeometry &g = stream.geometry();
  AreaRegion region;
  region.x0 = static_cast<std::uint32_t>(rng.uniform_int(0, g.width() - 1));
  region.y0 = static_cast<std::uint32_t>(rng.uniform_int(0, g.height() - 1));
  region.ratio = ratio;
  region.geometry = g;
  record.region = region;
  return finish(record, drop_area_region(stream, region), rng);
}

AugmentResult apply_policy(const EventStream &stream, const AugmentPolicy &policy, RngState &rng) {
  const std::uint64_t draws_before = rng.draws();
  const DropOp op = policy.select(rng);
  AugmentResult result = [&]() -> AugmentResult {
    if (op == DropOp::Identity) {
      AppliedOpRecord record = start_record(DropOp::Identity, stream, rng);
      return finish(record, stream, rng);
    }
    const auto level = static_cast<int>(rng.uniform_int(1, Magnitude::level_count(op)));
    const Magnitude ratio = Magnitude::for_op(op, level);
    switch (op) {
      case DropOp::RandomDrop: return random_drop(stream, ratio, rng);
      case DropOp::DropByTime: return drop_by_time(stream, ratio, rng, policy.time_rule);
      default: return drop_by_area(stream, ratio, rng);
    }
  }();
  result.record.draws = rng.draws() - draws_before;
  return result;
}

nlohmann::ordered_json to_json(const AppliedOpRecord &record) {
  nlohmann::ordered_json j;
  j["op"] = op_name(record.op);
  if (record.ratio) {
    j["rho"] = record.ratio->value();
    j["level"] = record.ratio->level();
  } else {
    j["rho"] = nullptr;
  }
  if (record.window) {
    j["window"] = {record.window->t_min, record.window->t_max};
  } else {
    j["window"] = nullptr;
  }
  if (record.region) {
    j["region"] = {{"x0", record.region->x0},
                   {"y0", record.region->y0},
                   {"x1", record.region->x1()},
                   {"y1", record.region->y1()}};
  } else {
    j["region"] = nullptr;
  }
  j["seed"] = record.seed;
  j["draws"] = record.draws;
  j["events_before"] = record.events_before;
  j["events_after"] = record.events_after;
  return j;
}

AppliedOpRecord record_from_json(const nlohmann::ordered_json &j, SensorGeometry geometry) {
  try {
    AppliedOpRecord r;
    const auto op = op_from_name(j.at("op").get<std::string>());
    if (!op) throw Error(Errc::InvalidArgument, "unknown op in record");
    r.op = *op;
    if (j.contains("level")) r.ratio = Magnitude::for_op(r.op, j.at("level").get<int>());
    if (!j.at("window").is_null()) {
      r.window = TimeWindow{j["window"].at(0).get<double>(), j["window"].at(1).get<double>()};
    }
    if (!j.at("region").is_null()) {
      AreaRegion region;
      region.x0 = j["region"].at("x0").get<std::uint32_t>();
      region.y0 = j["region"].at("y0").get<std::uint32_t>();
      if (!r.ratio) throw Error(Errc::InvalidArgument, "region without magnitude");
      region.ratio = *r.ratio;
      region.geometry = geometry;
      r.region = region;
    }
    r.seed = j.at("seed").get<std::uint64_t>();
    r.draws = j.at("draws").get<std::uint64_t>();
    r.events_before = j.at("events_before").get<std::uint64_t>();
    r.events_after = j.at("events_after").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw Error(Errc::InvalidArgument, std::string("malformed op record: ") + e.what());
  }
}

}  // namespace eventdrop
