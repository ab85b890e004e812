#include <doctest.h>

#include <cmath>

#include "core/continuous_process.hpp"
#include "test_support.hpp"

using namespace graphdyn;
using namespace gdtest;

namespace {

LevyItoIntensity edge_only(double e0, double e1) {
  LevyItoIntensity in;
  in.e0 = e0;
  in.e1 = e1;
  return in;
}

LevyItoIntensity vertex_only(double v, StochasticMatrix2 S) {
  LevyItoIntensity in;
  in.v = v;
  in.sigma = SigmaMixture::single(S);
  return in;
}

LevyItoIntensity kernel_only(double rate, RewiringKernel kernel) {
  LevyItoIntensity in;
  in.upsilon.emplace_back(rate, std::move(kernel));
  return in;
}

}  // namespace

TEST_CASE("simulate: zero rates give a frozen trajectory") {
  LevyItoIntensity in;
  FiniteGraph g0 = random_graph(5, 0.5, RngStream(1));
  ContinuousTrajectory traj = simulate(in, g0, 100.0, RngStream(2));
  CHECK(traj.events().empty());
  CHECK(traj.final_state() == g0);
}

TEST_CASE("simulate: symmetric flip occupies the edge half the time") {
  // two-state chain with rates 1/1; long-run occupancy 1/2
  ContinuousTrajectory traj = simulate(edge_only(1.0, 1.0), FiniteGraph(2), 4000.0, RngStream(3));
  double occupied = 0.0;
  double last_time = 0.0;
  bool on = false;
  for (const auto& ev : traj.events()) {
    if (on) occupied += ev.time - last_time;
    last_time = ev.time;
    if (!ev.silent) on = !on;
  }
  if (on) occupied += traj.horizon() - last_time;
  CHECK(std::abs(occupied / traj.horizon() - 0.5) < 0.05);
}

TEST_CASE("simulate: terminal edge density matches the flip equilibrium") {
  const double e0 = 0.2;
  const double e1 = 0.6;
  ContinuousTrajectory traj = simulate(edge_only(e0, e1), FiniteGraph(50), 20.0, RngStream(5));
  double dens = static_cast<double>(traj.final_state().edge_count()) /
                static_cast<double>(pair_count(50));
  CHECK(std::abs(dens - e1 / (e0 + e1)) < 0.03);
}

TEST_CASE("simulate: deterministic in the seed") {
  LevyItoIntensity in = edge_only(0.5, 0.5);
  in.v = 0.3;
  in.sigma = SigmaMixture::single(StochasticMatrix2::rows(0.7, 0.3, 0.2, 0.8));
  in.upsilon.emplace_back(0.4, RewiringKernel::product_er(0.3, 0.8));
  FiniteGraph g0 = random_graph(8, 0.5, RngStream(7));
  ContinuousTrajectory a = simulate(in, g0, 5.0, RngStream(8));
  ContinuousTrajectory b = simulate(in, g0, 5.0, RngStream(8));
  CHECK(a.events().size() == b.events().size());
  for (std::size_t k = 0; k < a.events().size(); ++k) CHECK(a.events()[k] == b.events()[k]);
}

TEST_CASE("simulate: rejects bad input") {
  CHECK_THROWS_AS(simulate(edge_only(0.5, 0.5), FiniteGraph(3), -1.0, RngStream(1)),
                  std::invalid_argument);
  LevyItoIntensity nan_rate;
  nan_rate.e0 = std::nan("");
  CHECK_THROWS_AS(simulate(nan_rate, FiniteGraph(3), 1.0, RngStream(1)), std::invalid_argument);
}

TEST_CASE("restrict_trajectory: full size is the identity") {
  LevyItoIntensity in = edge_only(0.4, 0.4);
  in.upsilon.emplace_back(0.5, RewiringKernel::product_er(0.2, 0.9));
  FiniteGraph g0 = random_graph(6, 0.5, RngStream(11));
  ContinuousTrajectory traj = simulate(in, g0, 3.0, RngStream(12));
  ContinuousTrajectory same = restrict_trajectory(traj, 6);
  CHECK(same.events().size() == traj.events().size());
  for (std::size_t k = 0; k < traj.events().size(); ++k) {
    CHECK(same.events()[k].time == traj.events()[k].time);
    CHECK(same.events()[k].silent == traj.events()[k].silent);
  }
  CHECK(same.final_state() == traj.final_state());
}

TEST_CASE("restrict_trajectory: flips outside the window go silent") {
  ContinuousTrajectory traj(FiniteGraph(6),
                            {EventRecord{1.0, EventKind::EdgeFlip, EdgeFlipPayload{5, 6, 1}, false}},
                            2.0);
  ContinuousTrajectory cut = restrict_trajectory(traj, 4);
  REQUIRE(cut.events().size() == 1);
  CHECK(cut.events()[0].silent);
  CHECK(cut.final_state() == FiniteGraph(4));
}

TEST_CASE("restrict_trajectory: restriction equals the shared-stream replay") {
  // Build the [4]-path two independent ways: restrict the n=6 trajectory, or
  // replay the n=6 event stream against the restricted initial state.
  LevyItoIntensity in = edge_only(0.6, 0.6);
  in.v = 0.5;
  in.sigma = SigmaMixture::single(StochasticMatrix2::rows(0.4, 0.6, 0.3, 0.7));
  in.upsilon.emplace_back(0.7, RewiringKernel::product_er(0.35, 0.75));
  RngStream rng(13);
  for (int rep = 0; rep < 25; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    FiniteGraph g0 = random_graph(6, 0.5, s.split(0));
    ContinuousTrajectory traj = simulate(in, g0, 4.0, s.split(1));
    ContinuousTrajectory cut = restrict_trajectory(traj, 4);

    FiniteGraph replay = restrict_to(g0, 4);
    auto cut_states = cut.replay_states();
    for (std::size_t k = 0; k < traj.events().size(); ++k) {
      const auto& ev = traj.events()[k];
      EventRecord reduced = ev;
      if (const auto* vu = std::get_if<VertexUpdatePayload>(&ev.payload)) {
        reduced.payload = VertexUpdatePayload{vu->vertex, vu->matrix_index, restrict_to(vu->map, 4)};
      } else if (const auto* gr = std::get_if<GlobalRewirePayload>(&ev.payload)) {
        reduced.payload = GlobalRewirePayload{gr->kernel_index, restrict_to(gr->map, 4)};
      }
      replay = apply_event(replay, reduced);
      CHECK(replay == cut_states[k + 1]);
      CHECK(replay == restrict_to(traj.replay_states()[k + 1], 4));
    }
  }
}

TEST_CASE("restrict_trajectory: non-silent times are the restricted jump times") {
  LevyItoIntensity in = edge_only(0.8, 0.8);
  FiniteGraph g0 = random_graph(6, 0.5, RngStream(17));
  ContinuousTrajectory traj = simulate(in, g0, 3.0, RngStream(18));
  ContinuousTrajectory cut = restrict_trajectory(traj, 3);
  auto states = cut.replay_states();
  for (std::size_t k = 0; k < cut.events().size(); ++k)
    CHECK(cut.events()[k].silent == (states[k] == states[k + 1]));
}

TEST_CASE("classify_jump: trivial and hand-built cases") {
  FiniteGraph g = random_graph(5, 0.5, RngStream(19));
  CHECK(classify_jump(g, g).type == JumpType::Silent);

  FiniteGraph one = g;
  one.set_edge(1, 2, !g.edge(1, 2));
  CHECK(classify_jump(g, one).type == JumpType::TypeI);

  // deterministic vertex update on the empty graph joins vertex 2 to all
  std::vector<std::uint8_t> ones(5, 1);
  std::vector<std::uint8_t> zeros(5, 0);
  FiniteGraph empty5(5);
  FiniteGraph joined = apply(vertex_update_map(5, 2, ones, ones), empty5);
  auto cls = classify_jump(empty5, joined);
  CHECK(cls.type == JumpType::TypeII);
  CHECK(cls.common_vertex == 2);
  CHECK(cls.changed_pairs.size() == 4);

  // two disjoint changed pairs cannot share a vertex
  FiniteGraph two = g;
  two.set_edge(1, 2, !g.edge(1, 2));
  two.set_edge(3, 4, !g.edge(3, 4));
  CHECK(classify_jump(g, two).type == JumpType::TypeIII);

  CHECK_THROWS_AS(classify_jump(FiniteGraph(3), FiniteGraph(4)), std::invalid_argument);
}

TEST_CASE("edge-only intensities produce only single-edge jumps") {
  ContinuousTrajectory traj = simulate(edge_only(0.7, 0.7), random_graph(20, 0.5, RngStream(23)),
                                       2.0, RngStream(24));
  auto states = traj.replay_states();
  for (std::size_t k = 0; k < traj.events().size(); ++k) {
    auto cls = classify_jump(states[k], states[k + 1]);
    if (traj.events()[k].silent)
      CHECK(cls.type == JumpType::Silent);
    else
      CHECK(cls.type == JumpType::TypeI);
  }
}

TEST_CASE("vertex-only intensities keep all changes on one vertex") {
  auto in = vertex_only(1.0, StochasticMatrix2::rows(0.5, 0.5, 0.5, 0.5));
  ContinuousTrajectory traj = simulate(in, random_graph(30, 0.5, RngStream(29)), 1.0, RngStream(30));
  auto states = traj.replay_states();
  int updates = 0;
  for (std::size_t k = 0; k < traj.events().size(); ++k) {
    const auto& ev = traj.events()[k];
    if (ev.silent) continue;
    ++updates;
    auto cls = classify_jump(states[k], states[k + 1]);
    CHECK((cls.type == JumpType::TypeI || cls.type == JumpType::TypeII));
    int vertex = std::get<VertexUpdatePayload>(ev.payload).vertex;
    for (auto [i, j] : cls.changed_pairs) CHECK((i == vertex || j == vertex));
  }
  CHECK(updates > 5);
}

TEST_CASE("global-kernel intensities change a stable fraction of pairs") {
  // with rule-change probability 0.3 in both branches, the per-event changed
  // fraction stays near 0.3 at every size
  RewiringKernel kernel = RewiringKernel::product_er(0.3, 0.7);
  for (int n : {20, 50, 100}) {
    auto in = kernel_only(1.0, kernel);
    ContinuousTrajectory traj = simulate(in, random_graph(n, 0.5, RngStream(31)), 30.0, RngStream(32));
    auto states = traj.replay_states();
    REQUIRE(traj.events().size() > 10);
    double total_fraction = 0.0;
    int counted = 0;
    for (std::size_t k = 0; k < traj.events().size(); ++k) {
      auto cls = classify_jump(states[k], states[k + 1]);
      total_fraction +=
          static_cast<double>(cls.changed_pairs.size()) / static_cast<double>(pair_count(n));
      ++counted;
    }
    double mean_fraction = total_fraction / counted;
    CHECK(mean_fraction > 0.2);
    CHECK(mean_fraction < 0.4);
  }
}

TEST_CASE("non-silent event counts respect the aggregate rate bound") {
  LevyItoIntensity in = edge_only(0.3, 0.5);
  in.v = 0.4;
  in.sigma = SigmaMixture::single(StochasticMatrix2::rows(0.5, 0.5, 0.5, 0.5));
  in.upsilon.emplace_back(0.6, RewiringKernel::product_er(0.4, 0.6));
  const int m = 4;
  const double horizon = 3.0;
  const double bound = static_cast<double>(pair_count(m)) * (in.e0 + in.e1) + m * in.v + 0.6;
  RngStream rng(37);
  double total = 0.0;
  const int runs = 60;
  for (int rep = 0; rep < runs; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    ContinuousTrajectory traj = simulate(in, random_graph(6, 0.5, s.split(0)), horizon, s.split(1));
    total += static_cast<double>(restrict_trajectory(traj, m).non_silent_count());
  }
  double mean = total / runs;
  double limit = horizon * bound;
  // Poisson(horizon*bound) dominates each count; allow four standard errors
  CHECK(mean <= limit + 4.0 * std::sqrt(limit / runs));
}

TEST_CASE("equivariance: relabeled payloads replay to the relabeled path") {
  LevyItoIntensity in = edge_only(0.5, 0.5);
  in.v = 0.4;
  in.sigma = SigmaMixture::single(StochasticMatrix2::rows(0.6, 0.4, 0.5, 0.5));
  in.upsilon.emplace_back(0.5, RewiringKernel::product_er(0.25, 0.8));
  RngStream rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    FiniteGraph g0 = random_graph(6, 0.5, s.split(0));
    auto sigma = random_permutation(6, s.split(1));
    std::vector<int> sigma_inv(6);
    for (int i = 0; i < 6; ++i)
      sigma_inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)] - 1)] = i + 1;

    ContinuousTrajectory traj = simulate(in, g0, 2.0, s.split(2));
    auto states = traj.replay_states();
    FiniteGraph relabeled = relabel(g0, sigma);
    for (std::size_t k = 0; k < traj.events().size(); ++k) {
      EventRecord moved = traj.events()[k];
      if (const auto* flip = std::get_if<EdgeFlipPayload>(&moved.payload)) {
        int i = sigma_inv[static_cast<std::size_t>(flip->i - 1)];
        int j = sigma_inv[static_cast<std::size_t>(flip->j - 1)];
        moved.payload = EdgeFlipPayload{std::min(i, j), std::max(i, j), flip->bit};
      } else if (const auto* vu = std::get_if<VertexUpdatePayload>(&moved.payload)) {
        moved.payload = VertexUpdatePayload{sigma_inv[static_cast<std::size_t>(vu->vertex - 1)],
                                            vu->matrix_index, relabel(vu->map, sigma)};
      } else {
        const auto& gr = std::get<GlobalRewirePayload>(moved.payload);
        moved.payload = GlobalRewirePayload{gr.kernel_index, relabel(gr.map, sigma)};
      }
      relabeled = apply_event(relabeled, moved);
      CHECK(relabeled == relabel(states[k + 1], sigma));
    }
  }
}
