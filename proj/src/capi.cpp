#include "graphdyn.h"

#include <cstring>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "core/continuous_process.hpp"
#include "core/discrete_chain.hpp"
#include "core/graph.hpp"
#include "core/kernels.hpp"
#include "core/limit_chain.hpp"
#include "core/rewiring.hpp"
#include "core/rng.hpp"
#include "core/serialize.hpp"
#include "core/stat_verify.hpp"

using namespace graphdyn;

struct gd_graph {
  FiniteGraph value;
};

struct gd_dtraj {
  Trajectory value;
};

struct gd_ctraj {
  ContinuousTrajectory value;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
gd_status guarded(Fn&& fn) {
  try {
    fn();
    return GD_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return GD_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return GD_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GD_ERR_INTERNAL;
  }
}

gd_status null_error(const char* what) {
  g_last_error = std::string(what) + ": NULL argument";
  return GD_ERR_NULL;
}

// Density rows for a sequence of (label, state) snapshots; label is a step
// index or a time, controlled by `label_key`.
std::string density_table_text(const char* label_key, bool integer_label,
                               const std::vector<std::pair<double, const FiniteGraph*>>& snapshots,
                               int max_level, bool as_csv) {
  std::ostringstream out;
  json records = json::array();
  if (as_csv) out << label_key << ",level,motif,value,exact\n";
  for (const auto& [label, state] : snapshots) {
    json lv = integer_label ? json(static_cast<std::int64_t>(label)) : json(label);
    GraphLimitVector limits = empirical_limit(*state, max_level);
    for (int k = 1; k <= max_level; ++k) {
      const auto& values = limits.level(k);
      for (std::size_t code = 0; code < values.size(); ++code) {
        if (as_csv) {
          // json dumping keeps doubles round-trip exact and locale-free
          out << lv.dump() << "," << k << "," << code << "," << json(values[code]).dump() << ","
              << (limits.level_exact(k) ? 1 : 0) << "\n";
        } else {
          records.push_back(json{{label_key, lv},
                                 {"level", k},
                                 {"motif", code},
                                 {"value", values[code]},
                                 {"exact", limits.level_exact(k)}});
        }
      }
    }
  }
  if (!as_csv) return records.dump(2) + "\n";
  return out.str();
}

}  // namespace

extern "C" {

const char* gd_version(void) { return "1.0.0"; }

const char* gd_last_error(void) { return g_last_error.c_str(); }

void gd_string_free(char* s) { delete[] s; }

uint64_t gd_seed_derive(uint64_t seed, uint64_t key) { return RngStream(seed).split(key).seed(); }

gd_status gd_graph_create(int n, const int* edges, size_t edge_count, gd_graph** out) {
  if (out == nullptr || (edges == nullptr && edge_count > 0)) return null_error("gd_graph_create");
  return guarded([&] {
    FiniteGraph g(n);
    for (size_t k = 0; k < edge_count; ++k) g.set_edge(edges[2 * k], edges[2 * k + 1], true);
    *out = new gd_graph{std::move(g)};
  });
}

gd_status gd_graph_complete(int n, gd_graph** out) {
  if (out == nullptr) return null_error("gd_graph_complete");
  return guarded([&] { *out = new gd_graph{FiniteGraph::complete(n)}; });
}

gd_status gd_graph_from_json(const char* json_text, gd_graph** out) {
  if (json_text == nullptr || out == nullptr) return null_error("gd_graph_from_json");
  return guarded([&] { *out = new gd_graph{graph_from_json(parse_json_text(json_text))}; });
}

gd_status gd_graph_to_json(const gd_graph* g, char** out_json) {
  if (g == nullptr || out_json == nullptr) return null_error("gd_graph_to_json");
  return guarded([&] { *out_json = copy_string(graph_to_json(g->value).dump()); });
}

gd_status gd_graph_from_edgelist(const char* text, gd_graph** out) {
  if (text == nullptr || out == nullptr) return null_error("gd_graph_from_edgelist");
  return guarded([&] { *out = new gd_graph{graph_from_edgelist(text)}; });
}

gd_status gd_graph_to_edgelist(const gd_graph* g, char** out_text) {
  if (g == nullptr || out_text == nullptr) return null_error("gd_graph_to_edgelist");
  return guarded([&] { *out_text = copy_string(graph_to_edgelist(g->value)); });
}

void gd_graph_free(gd_graph* g) { delete g; }

int gd_graph_order(const gd_graph* g) { return g == nullptr ? -1 : g->value.order(); }

int gd_graph_edge(const gd_graph* g, int i, int j) {
  if (g == nullptr) return -1;
  int result = -1;
  guarded([&] { result = g->value.edge(i, j) ? 1 : 0; });
  return result;
}

gd_status gd_graph_edge_count(const gd_graph* g, size_t* out) {
  if (g == nullptr || out == nullptr) return null_error("gd_graph_edge_count");
  return guarded([&] { *out = g->value.edge_count(); });
}

gd_status gd_graph_restrict(const gd_graph* g, int m, gd_graph** out) {
  if (g == nullptr || out == nullptr) return null_error("gd_graph_restrict");
  return guarded([&] { *out = new gd_graph{restrict_to(g->value, m)}; });
}

gd_status gd_graph_relabel(const gd_graph* g, const int* perm, size_t len, gd_graph** out) {
  if (g == nullptr || perm == nullptr || out == nullptr) return null_error("gd_graph_relabel");
  return guarded([&] {
    std::span<const int> p(perm, len);
    *out = new gd_graph{relabel(g->value, p)};
  });
}

gd_status gd_graph_density(const gd_graph* motif, const gd_graph* host, double* value) {
  if (motif == nullptr || host == nullptr || value == nullptr) return null_error("gd_graph_density");
  return guarded([&] { *value = density(motif->value, host->value).value; });
}

gd_status gd_graph_metric(const gd_graph* a, const gd_graph* b, double* out) {
  if (a == nullptr || b == nullptr || out == nullptr) return null_error("gd_graph_metric");
  return guarded([&] { *out = graph_metric(a->value, b->value); });
}

gd_status gd_graph_density_vector(const gd_graph* g, int max_level, int as_csv, char** out) {
  if (g == nullptr || out == nullptr) return null_error("gd_graph_density_vector");
  return guarded([&] {
    if (as_csv) {
      std::vector<std::pair<double, const FiniteGraph*>> snapshots{{0.0, &g->value}};
      *out = copy_string(density_table_text("step", true, snapshots, max_level, true));
    } else {
      *out = copy_string(limit_vector_to_json(empirical_limit(g->value, max_level)).dump(2) + "\n");
    }
  });
}

gd_status gd_sample_graphon(const char* graphon_json, int n, uint64_t seed, gd_graph** out) {
  if (graphon_json == nullptr || out == nullptr) return null_error("gd_sample_graphon");
  return guarded([&] {
    Graphon phi = graphon_from_json(parse_json_text(graphon_json));
    *out = new gd_graph{sample_graph(phi, n, RngStream(seed))};
  });
}

gd_status gd_discrete_run(const char* config_json, gd_dtraj** out) {
  if (config_json == nullptr || out == nullptr) return null_error("gd_discrete_run");
  return guarded([&] {
    DiscreteRunSpec spec = discrete_spec_from_json(parse_json_text(config_json));
    *out = new gd_dtraj{run_chain(spec.config, spec.initial)};
  });
}

void gd_dtraj_free(gd_dtraj* t) { delete t; }

int gd_dtraj_steps(const gd_dtraj* t) { return t == nullptr ? -1 : t->value.steps(); }

gd_status gd_dtraj_state(const gd_dtraj* t, int step, gd_graph** out) {
  if (t == nullptr || out == nullptr) return null_error("gd_dtraj_state");
  return guarded([&] { *out = new gd_graph{t->value.state(step)}; });
}

gd_status gd_dtraj_states_jsonl(const gd_dtraj* t, char** out) {
  if (t == nullptr || out == nullptr) return null_error("gd_dtraj_states_jsonl");
  return guarded([&] {
    std::ostringstream lines;
    for (int m = 0; m <= t->value.steps(); ++m)
      lines << json{{"step", m}, {"graph", graph_to_json(t->value.state(m))}}.dump() << "\n";
    *out = copy_string(lines.str());
  });
}

gd_status gd_dtraj_density_table(const gd_dtraj* t, int max_level, int as_csv, char** out) {
  if (t == nullptr || out == nullptr) return null_error("gd_dtraj_density_table");
  return guarded([&] {
    std::vector<std::pair<double, const FiniteGraph*>> snapshots;
    for (int m = 0; m <= t->value.steps(); ++m)
      snapshots.emplace_back(static_cast<double>(m), &t->value.state(m));
    *out = copy_string(density_table_text("step", true, snapshots, max_level, as_csv != 0));
  });
}

gd_status gd_dtraj_limit_report(const gd_dtraj* t, int max_level, int samples, uint64_t seed,
                                char** out_json) {
  if (t == nullptr || out_json == nullptr) return null_error("gd_dtraj_limit_report");
  return guarded([&] {
    PredictionReport report = predict_vs_empirical(t->value, max_level, samples, RngStream(seed));
    *out_json = copy_string(prediction_report_to_json(report).dump(2) + "\n");
  });
}

gd_status gd_continuous_run(const char* config_json, gd_ctraj** out) {
  if (config_json == nullptr || out == nullptr) return null_error("gd_continuous_run");
  return guarded([&] {
    ContinuousRunSpec spec = continuous_spec_from_json(parse_json_text(config_json));
    *out = new gd_ctraj{simulate(spec.intensity, spec.initial, spec.horizon, RngStream(spec.seed))};
  });
}

void gd_ctraj_free(gd_ctraj* t) { delete t; }

gd_status gd_ctraj_event_count(const gd_ctraj* t, size_t* out) {
  if (t == nullptr || out == nullptr) return null_error("gd_ctraj_event_count");
  *out = t->value.events().size();
  return GD_OK;
}

gd_status gd_ctraj_non_silent_count(const gd_ctraj* t, size_t* out) {
  if (t == nullptr || out == nullptr) return null_error("gd_ctraj_non_silent_count");
  *out = t->value.non_silent_count();
  return GD_OK;
}

gd_status gd_ctraj_events_jsonl(const gd_ctraj* t, char** out) {
  if (t == nullptr || out == nullptr) return null_error("gd_ctraj_events_jsonl");
  return guarded([&] {
    std::ostringstream lines;
    for (const auto& ev : t->value.events()) lines << event_to_json(ev).dump() << "\n";
    *out = copy_string(lines.str());
  });
}

gd_status gd_ctraj_state_at(const gd_ctraj* t, double time, gd_graph** out) {
  if (t == nullptr || out == nullptr) return null_error("gd_ctraj_state_at");
  return guarded([&] { *out = new gd_graph{t->value.state_at(time)}; });
}

gd_status gd_ctraj_restrict(const gd_ctraj* t, int m, gd_ctraj** out) {
  if (t == nullptr || out == nullptr) return null_error("gd_ctraj_restrict");
  return guarded([&] { *out = new gd_ctraj{restrict_trajectory(t->value, m)}; });
}

gd_status gd_ctraj_density_table(const gd_ctraj* t, const double* times, size_t n_times,
                                 int max_level, int as_csv, char** out) {
  if (t == nullptr || times == nullptr || out == nullptr) return null_error("gd_ctraj_density_table");
  return guarded([&] {
    std::vector<FiniteGraph> states;
    states.reserve(n_times);
    for (size_t k = 0; k < n_times; ++k) states.push_back(t->value.state_at(times[k]));
    std::vector<std::pair<double, const FiniteGraph*>> snapshots;
    for (size_t k = 0; k < n_times; ++k) snapshots.emplace_back(times[k], &states[k]);
    *out = copy_string(density_table_text("time", false, snapshots, max_level, as_csv != 0));
  });
}

gd_status gd_verify(const char* suite, const char* params_json, char** out_report_json,
                    char** out_table, int* all_passed) {
  if (suite == nullptr || out_report_json == nullptr || all_passed == nullptr)
    return null_error("gd_verify");
  return guarded([&] {
    json params = params_json != nullptr ? parse_json_text(params_json) : json::object();
    auto num = [&](const char* key, double fallback) {
      return params.contains(key) ? params[key].get<double>() : fallback;
    };
    auto integer = [&](const char* key, std::int64_t fallback) {
      return params.contains(key) ? params[key].get<std::int64_t>() : fallback;
    };
    double alpha = num("alpha", 1.0);
    double beta = num("beta", 1.0);
    auto seed = static_cast<std::uint64_t>(integer("seed", 20240801));

    std::vector<TestReport> reports;
    std::string name(suite);
    bool known = false;
    if (name == "reversible" || name == "all") {
      known = true;
      reports.push_back(check_detailed_balance(alpha, beta, 2));
      reports.push_back(check_detailed_balance(alpha, beta, 3));
    }
    if (name == "consistency" || name == "all") {
      known = true;
      reports.push_back(check_consistency(alpha, beta));
    }
    if (name == "exchangeability" || name == "all") {
      known = true;
      auto replicates = static_cast<int>(integer("replicates", 20000));
      reports.push_back(check_exchangeability(ExchangeabilityKind::kProductErKernel, replicates, seed));
      reports.push_back(check_exchangeability(ExchangeabilityKind::kVertexUpdate, replicates,
                                              RngStream(seed).split(1).seed()));
    }
    if (name == "er-stationarity" || name == "all") {
      known = true;
      reports.push_back(check_er_stationarity(num("p0", 0.2), num("p1", 0.6),
                                              static_cast<int>(integer("n", 100)),
                                              static_cast<int>(integer("steps", 300)),
                                              static_cast<int>(integer("replicates", 20)), seed));
    }
    if (name == "sampler-laws" || name == "all") {
      known = true;
      auto samples = static_cast<int>(integer("samples", 100000));
      double p = num("p", 0.5);
      reports.push_back(check_er_law(p, p, samples, seed));
      reports.push_back(check_beta_law(alpha, beta, alpha, beta, samples,
                                       RngStream(seed).split(2).seed()));
    }
    if (!known) throw std::invalid_argument("gd_verify: unknown suite \"" + name + "\"");

    bool ok = true;
    json arr = json::array();
    for (const auto& r : reports) {
      ok = ok && r.passed;
      arr.push_back(r.to_json());
    }
    *all_passed = ok ? 1 : 0;
    *out_report_json = copy_string(arr.dump(2) + "\n");
    if (out_table != nullptr) *out_table = copy_string(report_table(reports));
  });
}

}  // extern "C"
