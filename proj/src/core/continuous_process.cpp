#include "continuous_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphdyn {

namespace {

// Per-event stream roles under root.split(event_index).
constexpr std::uint64_t kHoldRole = 0;
constexpr std::uint64_t kCategoryRole = 1;
constexpr std::uint64_t kTargetRole = 2;
constexpr std::uint64_t kDrawRole = 3;

}  // namespace

EventKind event_kind_of(const EventPayload& payload) {
  if (std::holds_alternative<EdgeFlipPayload>(payload)) return EventKind::EdgeFlip;
  if (std::holds_alternative<VertexUpdatePayload>(payload)) return EventKind::VertexUpdate;
  return EventKind::GlobalRewire;
}

FiniteGraph apply_event(const FiniteGraph& g, const EventRecord& ev) {
  if (const auto* flip = std::get_if<EdgeFlipPayload>(&ev.payload)) {
    if (flip->i > g.order() || flip->j > g.order()) return g;  // pair outside a restricted state
    FiniteGraph out = g;
    out.set_edge(flip->i, flip->j, flip->bit != 0);
    return out;
  }
  if (const auto* vu = std::get_if<VertexUpdatePayload>(&ev.payload)) return apply(vu->map, g);
  return apply(std::get<GlobalRewirePayload>(ev.payload).map, g);
}

ContinuousTrajectory::ContinuousTrajectory(FiniteGraph initial, std::vector<EventRecord> events,
                                           double horizon)
    : initial_(std::move(initial)), events_(std::move(events)), horizon_(horizon) {
  if (!(horizon_ >= 0.0)) throw std::invalid_argument("ContinuousTrajectory: horizon must be nonnegative");
  double last = 0.0;
  for (const auto& ev : events_) {
    if (!(ev.time > last) || ev.time > horizon_)
      throw std::invalid_argument("ContinuousTrajectory: event times must be strictly increasing within the horizon");
    last = ev.time;
  }
}

std::vector<FiniteGraph> ContinuousTrajectory::replay_states() const {
  std::vector<FiniteGraph> states;
  states.reserve(events_.size() + 1);
  states.push_back(initial_);
  for (const auto& ev : events_) states.push_back(apply_event(states.back(), ev));
  return states;
}

FiniteGraph ContinuousTrajectory::final_state() const {
  FiniteGraph g = initial_;
  for (const auto& ev : events_) g = apply_event(g, ev);
  return g;
}

FiniteGraph ContinuousTrajectory::state_at(double t) const {
  if (!(t >= 0.0) || t > horizon_) throw std::invalid_argument("state_at: time outside [0, horizon]");
  FiniteGraph g = initial_;
  for (const auto& ev : events_) {
    if (ev.time > t) break;
    g = apply_event(g, ev);
  }
  return g;
}

std::size_t ContinuousTrajectory::non_silent_count() const {
  return static_cast<std::size_t>(
      std::count_if(events_.begin(), events_.end(), [](const EventRecord& ev) { return !ev.silent; }));
}

ContinuousTrajectory simulate(const LevyItoIntensity& intensity, const FiniteGraph& g0,
                              double horizon, RngStream rng) {
  intensity.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("simulate: horizon must be finite and nonnegative");
  const int n = g0.order();
  const auto pairs = static_cast<double>(pair_count(n));

  std::vector<double> rates;
  rates.push_back(pairs * intensity.e0);
  rates.push_back(pairs * intensity.e1);
  rates.push_back(static_cast<double>(n) * intensity.v);
  for (const auto& [rate, kernel] : intensity.upsilon) {
    (void)kernel;
    rates.push_back(rate);
  }
  double total = 0.0;
  for (double r : rates) total += r;

  std::vector<EventRecord> events;
  FiniteGraph state = g0;
  double t = 0.0;
  for (std::uint64_t e = 0; total > 0.0; ++e) {
    auto es = rng.split(e);
    t += es.split(kHoldRole).next_exponential(total);
    if (t > horizon) break;

    auto cat = es.split(kCategoryRole).next_index(rates);
    EventRecord ev;
    ev.time = t;
    if (cat == 0 || cat == 1) {
      auto target = es.split(kTargetRole);
      auto [i, j] = unrank_pair(static_cast<std::size_t>(target.next_below(pair_count(n))));
      auto bit = static_cast<std::uint8_t>(cat);
      ev.kind = EventKind::EdgeFlip;
      ev.silent = state.edge(i, j) == (bit != 0);
      ev.payload = EdgeFlipPayload{i, j, bit};
      if (!ev.silent) state.set_edge(i, j, bit != 0);
    } else if (cat == 2) {
      auto target = es.split(kTargetRole);
      int i = 1 + static_cast<int>(target.next_below(static_cast<std::uint64_t>(n)));
      int matrix_index = 0;
      RewiringMap w = sample_vertex_update(intensity.sigma, i, n, es.split(kDrawRole), &matrix_index);
      FiniteGraph next = apply(w, state);
      ev.kind = EventKind::VertexUpdate;
      ev.silent = next == state;
      ev.payload = VertexUpdatePayload{i, matrix_index, std::move(w)};
      state = std::move(next);
    } else {
      auto k = static_cast<int>(cat - 3);
      RewiringMap w = sample_rewiring(intensity.upsilon[static_cast<std::size_t>(k)].second, n,
                                      es.split(kDrawRole));
      FiniteGraph next = apply(w, state);
      ev.kind = EventKind::GlobalRewire;
      ev.silent = next == state;
      ev.payload = GlobalRewirePayload{k, std::move(w)};
      state = std::move(next);
    }
    events.push_back(std::move(ev));
  }
  return ContinuousTrajectory(g0, std::move(events), horizon);
}

ContinuousTrajectory restrict_trajectory(const ContinuousTrajectory& traj, int m) {
  if (m < 1 || m > traj.order()) throw std::invalid_argument("restrict_trajectory: size out of range");
  FiniteGraph state = restrict_to(traj.initial(), m);
  std::vector<EventRecord> events;
  events.reserve(traj.events().size());
  for (const auto& ev : traj.events()) {
    EventRecord out;
    out.time = ev.time;
    out.kind = ev.kind;
    if (const auto* flip = std::get_if<EdgeFlipPayload>(&ev.payload)) {
      out.payload = *flip;  // a pair outside [m] denotes the identity action
      if (flip->j <= m && flip->i <= m) {
        out.silent = state.edge(flip->i, flip->j) == (flip->bit != 0);
        if (!out.silent) state.set_edge(flip->i, flip->j, flip->bit != 0);
      } else {
        out.silent = true;
      }
    } else if (const auto* vu = std::get_if<VertexUpdatePayload>(&ev.payload)) {
      VertexUpdatePayload p{vu->vertex, vu->matrix_index, restrict_to(vu->map, m)};
      FiniteGraph next = apply(p.map, state);
      out.silent = next == state;
      out.payload = std::move(p);
      state = std::move(next);
    } else {
      const auto& gr = std::get<GlobalRewirePayload>(ev.payload);
      GlobalRewirePayload p{gr.kernel_index, restrict_to(gr.map, m)};
      FiniteGraph next = apply(p.map, state);
      out.silent = next == state;
      out.payload = std::move(p);
      state = std::move(next);
    }
    events.push_back(std::move(out));
  }
  return ContinuousTrajectory(restrict_to(traj.initial(), m), std::move(events), traj.horizon());
}

JumpClassification classify_jump(const FiniteGraph& before, const FiniteGraph& after,
                                 std::optional<int> incident_hint) {
  if (before.order() != after.order())
    throw std::invalid_argument("classify_jump: graphs must have equal order");
  JumpClassification out;
  const auto& a = before.bits();
  const auto& b = after.bits();
  for (std::size_t idx = 0; idx < a.size(); ++idx)
    if (a[idx] != b[idx]) out.changed_pairs.push_back(unrank_pair(idx));

  if (out.changed_pairs.empty()) {
    out.type = JumpType::Silent;
    return out;
  }
  if (out.changed_pairs.size() == 1) {
    out.type = JumpType::TypeI;
    return out;
  }
  // vertices shared by every changed pair (at most one for distinct pairs)
  auto shared = [&](int v) {
    return std::all_of(out.changed_pairs.begin(), out.changed_pairs.end(),
                       [v](const std::pair<int, int>& p) { return p.first == v || p.second == v; });
  };
  if (incident_hint && shared(*incident_hint)) {
    out.type = JumpType::TypeII;
    out.common_vertex = *incident_hint;
    return out;
  }
  for (int v : {out.changed_pairs.front().first, out.changed_pairs.front().second}) {
    if (shared(v)) {
      out.type = JumpType::TypeII;
      out.common_vertex = v;
      return out;
    }
  }
  out.type = JumpType::TypeIII;
  return out;
}

const char* jump_type_name(JumpType t) {
  switch (t) {
    case JumpType::Silent: return "silent";
    case JumpType::TypeI: return "type-1";
    case JumpType::TypeII: return "type-2";
    case JumpType::TypeIII: return "type-3";
  }
  return "unknown";
}

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::EdgeFlip: return "edge-flip";
    case EventKind::VertexUpdate: return "vertex-update";
    case EventKind::GlobalRewire: return "global-rewire";
  }
  return "unknown";
}

}  // namespace graphdyn
