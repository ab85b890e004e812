#ifndef GRAPHDYN_CORE_CONTINUOUS_PROCESS_HPP
#define GRAPHDYN_CORE_CONTINUOUS_PROCESS_HPP

#include <optional>
#include <variant>
#include <vector>

#include "graph.hpp"
#include "kernels.hpp"
#include "rewiring.hpp"

namespace graphdyn {

enum class EventKind { EdgeFlip, VertexUpdate, GlobalRewire };

struct EdgeFlipPayload {
  int i = 0;
  int j = 0;
  std::uint8_t bit = 0;

  bool operator==(const EdgeFlipPayload&) const = default;
};

struct VertexUpdatePayload {
  int vertex = 0;
  int matrix_index = 0;
  RewiringMap map;

  bool operator==(const VertexUpdatePayload&) const = default;
};

struct GlobalRewirePayload {
  int kernel_index = 0;
  RewiringMap map;

  bool operator==(const GlobalRewirePayload&) const = default;
};

using EventPayload = std::variant<EdgeFlipPayload, VertexUpdatePayload, GlobalRewirePayload>;

struct EventRecord {
  double time = 0.0;
  EventKind kind = EventKind::EdgeFlip;
  EventPayload payload;
  bool silent = false;  // the action left the state unchanged

  bool operator==(const EventRecord&) const = default;
};

EventKind event_kind_of(const EventPayload& payload);

// Applies the event's action; the record's silent flag is not consulted.
FiniteGraph apply_event(const FiniteGraph& g, const EventRecord& ev);

// Event log plus initial state; replaying the log from the initial graph is
// the definition of the trajectory, so the log doubles as its own audit
// trail.
class ContinuousTrajectory {
 public:
  ContinuousTrajectory(FiniteGraph initial, std::vector<EventRecord> events, double horizon);

  [[nodiscard]] const FiniteGraph& initial() const { return initial_; }
  [[nodiscard]] const std::vector<EventRecord>& events() const { return events_; }
  [[nodiscard]] double horizon() const { return horizon_; }
  [[nodiscard]] int order() const { return initial_.order(); }

  // State after each event, events_[k] giving states()[k+1]; entry 0 is the
  // initial state.
  [[nodiscard]] std::vector<FiniteGraph> replay_states() const;
  [[nodiscard]] FiniteGraph final_state() const;
  [[nodiscard]] FiniteGraph state_at(double t) const;
  [[nodiscard]] std::size_t non_silent_count() const;

 private:
  FiniteGraph initial_;
  std::vector<EventRecord> events_;
  double horizon_;
};

// Event-driven simulation of the jump process with the given intensity:
// aggregate exponential clocks race for per-pair flips (rate C(n,2)*e_k per
// direction, uniform pair choice), per-vertex resamplings (rate n*v), and
// each global rewiring kernel (its own rate). No-op actions are recorded
// with silent=true rather than dropped, preserving the coupling that
// restriction tests rely on.
ContinuousTrajectory simulate(const LevyItoIntensity& intensity, const FiniteGraph& g0,
                              double horizon, RngStream rng);

// Restricts the initial state and every payload to [m]; events whose
// restricted action fixes the running restricted state become silent.
ContinuousTrajectory restrict_trajectory(const ContinuousTrajectory& traj, int m);

enum class JumpType { Silent, TypeI, TypeII, TypeIII };

struct JumpClassification {
  JumpType type = JumpType::Silent;
  std::vector<std::pair<int, int>> changed_pairs;
  std::optional<int> common_vertex;  // set for TypeII
};

// Silent: no pair changed. TypeI: exactly one. TypeII: several, all sharing
// one vertex. TypeIII: anything else. `incident_hint` only biases which
// shared vertex is reported, never the classification.
JumpClassification classify_jump(const FiniteGraph& before, const FiniteGraph& after,
                                 std::optional<int> incident_hint = {});

const char* jump_type_name(JumpType t);
const char* event_kind_name(EventKind k);

}  // namespace graphdyn

#endif
