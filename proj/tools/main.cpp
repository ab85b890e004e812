// Command-line front end for the graphdyn engine. Talks to the core
// exclusively through the C API in graphdyn.h.

#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphdyn.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& message) { throw CliError(message); }

[[noreturn]] void fail_api(const std::string& context) {
  fail(context + ": " + gd_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path);
  out << content;
  if (!out) fail("write failed for " + path);
}

// Takes ownership of a C-API string.
std::string take_string(char* s) {
  std::string out = s != nullptr ? s : "";
  gd_string_free(s);
  return out;
}

json parse_config_file(const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) fail("malformed JSON in " + path);
  return j;
}

void write_manifest(const std::string& out_prefix, const json& resolved) {
  json manifest = resolved;
  manifest["tool_version"] = gd_version();
  write_file(out_prefix + ".manifest.json", manifest.dump(2) + "\n");
}

struct CommonOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> steps;
  std::optional<double> horizon;

  void apply(json& config) const {
    if (seed) config["seed"] = *seed;
    if (n) config["n"] = *n;
    if (steps) config["steps"] = *steps;
    if (horizon) config["horizon"] = *horizon;
  }
};

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string graphon_file;
  double constant_p = -1.0;
  int n = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int count = 1;
  std::string out;
  std::string format = "json";
};

int run_sample(const SampleArgs& args) {
  if (!args.seed_set) fail("--seed is mandatory");
  std::string graphon_json;
  if (!args.graphon_file.empty()) {
    graphon_json = read_file(args.graphon_file);
  } else if (args.constant_p >= 0.0) {
    graphon_json = json{{"constant", args.constant_p}}.dump();
  } else {
    fail("need --graphon FILE or --p VALUE");
  }

  json artifacts = json::array();
  for (int k = 0; k < args.count; ++k) {
    std::uint64_t seed = args.count == 1 ? args.seed : gd_seed_derive(args.seed, static_cast<std::uint64_t>(k));
    gd_graph* g = nullptr;
    if (gd_sample_graphon(graphon_json.c_str(), args.n, seed, &g) != GD_OK)
      fail_api("sampling failed");
    std::string body;
    char* text = nullptr;
    if (args.format == "edgelist") {
      if (gd_graph_to_edgelist(g, &text) != GD_OK) fail_api("serialization failed");
      body = take_string(text);
    } else {
      if (gd_graph_to_json(g, &text) != GD_OK) fail_api("serialization failed");
      body = take_string(text) + "\n";
    }
    gd_graph_free(g);
    std::string suffix = args.format == "edgelist" ? ".graph.txt" : ".graph.json";
    std::string path = args.count == 1 ? args.out + suffix
                                       : args.out + "." + std::to_string(k) + suffix;
    write_file(path, body);
    artifacts.push_back(path);
  }
  write_manifest(args.out, json{{"mode", "sample"},
                                {"graphon", json::parse(graphon_json)},
                                {"n", args.n},
                                {"seed", args.seed},
                                {"count", args.count},
                                {"format", args.format},
                                {"artifacts", artifacts}});
  return kExitOk;
}

// ---------------------------------------------------------- run-discrete

struct DiscreteArgs {
  std::string config_file;
  CommonOverrides overrides;
  int replicas = 1;
  int threads = 1;
  int max_level = 2;
  std::string out;
  std::string format = "csv";
};

struct ReplicaOutput {
  std::string states;
  std::string densities;
};

ReplicaOutput run_one_discrete(const json& config, int max_level, bool as_csv) {
  gd_dtraj* traj = nullptr;
  if (gd_discrete_run(config.dump().c_str(), &traj) != GD_OK) fail_api("run-discrete failed");
  ReplicaOutput out;
  char* text = nullptr;
  if (gd_dtraj_states_jsonl(traj, &text) != GD_OK) {
    gd_dtraj_free(traj);
    fail_api("state export failed");
  }
  out.states = take_string(text);
  if (gd_dtraj_density_table(traj, max_level, as_csv ? 1 : 0, &text) != GD_OK) {
    gd_dtraj_free(traj);
    fail_api("density export failed");
  }
  out.densities = take_string(text);
  gd_dtraj_free(traj);
  return out;
}

// Runs fn(r) for r in [0, replicas) on up to `threads` workers and returns
// the results ordered by replica index.
template <typename Fn>
auto run_replicas(int replicas, int threads, Fn&& fn) {
  using Result = decltype(fn(0));
  std::vector<Result> results(static_cast<std::size_t>(replicas));
  if (threads <= 1 || replicas <= 1) {
    for (int r = 0; r < replicas; ++r) results[static_cast<std::size_t>(r)] = fn(r);
    return results;
  }
  for (int base = 0; base < replicas; base += threads) {
    std::vector<std::future<Result>> batch;
    int limit = std::min(replicas, base + threads);
    for (int r = base; r < limit; ++r)
      batch.push_back(std::async(std::launch::async, [&fn, r] { return fn(r); }));
    for (int r = base; r < limit; ++r)
      results[static_cast<std::size_t>(r)] = batch[static_cast<std::size_t>(r - base)].get();
  }
  return results;
}

int run_discrete(const DiscreteArgs& args) {
  json config = parse_config_file(args.config_file);
  args.overrides.apply(config);
  if (!config.contains("seed")) fail("config has no \"seed\" and no --seed override was given");
  bool as_csv = args.format == "csv";
  auto base_seed = config["seed"].get<std::uint64_t>();

  auto results = run_replicas(args.replicas, args.threads, [&](int r) {
    json replica_config = config;
    if (args.replicas > 1)
      replica_config["seed"] = gd_seed_derive(base_seed, static_cast<std::uint64_t>(r));
    return run_one_discrete(replica_config, args.max_level, as_csv);
  });

  json artifacts = json::array();
  for (int r = 0; r < args.replicas; ++r) {
    std::string prefix = args.replicas == 1 ? args.out : args.out + ".r" + std::to_string(r);
    std::string density_path = prefix + (as_csv ? ".densities.csv" : ".densities.json");
    write_file(prefix + ".states.jsonl", results[static_cast<std::size_t>(r)].states);
    write_file(density_path, results[static_cast<std::size_t>(r)].densities);
    artifacts.push_back(prefix + ".states.jsonl");
    artifacts.push_back(density_path);
  }
  write_manifest(args.out, json{{"mode", "run-discrete"},
                                {"config", config},
                                {"replicas", args.replicas},
                                {"threads", args.threads},
                                {"m_max", args.max_level},
                                {"format", args.format},
                                {"artifacts", artifacts}});
  return kExitOk;
}

// -------------------------------------------------------- run-continuous

struct ContinuousArgs {
  std::string config_file;
  CommonOverrides overrides;
  int replicas = 1;
  int threads = 1;
  int max_level = 2;
  int grid_points = 11;
  std::string grid;
  std::string out;
  std::string format = "csv";
};

std::vector<double> resolve_grid(const ContinuousArgs& args, double horizon) {
  std::vector<double> times;
  if (!args.grid.empty()) {
    std::stringstream ss(args.grid);
    std::string item;
    while (std::getline(ss, item, ',')) times.push_back(std::stod(item));
    for (double t : times)
      if (t < 0.0 || t > horizon) fail("grid time outside [0, horizon]");
    return times;
  }
  if (args.grid_points < 2) fail("--grid-points must be at least 2");
  for (int k = 0; k < args.grid_points; ++k)
    times.push_back(horizon * static_cast<double>(k) / (args.grid_points - 1));
  return times;
}

int run_continuous(const ContinuousArgs& args) {
  json config = parse_config_file(args.config_file);
  args.overrides.apply(config);
  if (!config.contains("seed")) fail("config has no \"seed\" and no --seed override was given");
  if (!config.contains("horizon")) fail("config has no \"horizon\" and no --horizon override was given");
  bool as_csv = args.format == "csv";
  auto base_seed = config["seed"].get<std::uint64_t>();
  std::vector<double> grid = resolve_grid(args, config["horizon"].get<double>());

  auto results = run_replicas(args.replicas, args.threads, [&](int r) {
    json replica_config = config;
    if (args.replicas > 1)
      replica_config["seed"] = gd_seed_derive(base_seed, static_cast<std::uint64_t>(r));
    gd_ctraj* traj = nullptr;
    if (gd_continuous_run(replica_config.dump().c_str(), &traj) != GD_OK)
      fail_api("run-continuous failed");
    ReplicaOutput out;
    char* text = nullptr;
    if (gd_ctraj_events_jsonl(traj, &text) != GD_OK) {
      gd_ctraj_free(traj);
      fail_api("event export failed");
    }
    out.states = take_string(text);
    if (gd_ctraj_density_table(traj, grid.data(), grid.size(), args.max_level, as_csv ? 1 : 0,
                               &text) != GD_OK) {
      gd_ctraj_free(traj);
      fail_api("density export failed");
    }
    out.densities = take_string(text);
    gd_ctraj_free(traj);
    return out;
  });

  json artifacts = json::array();
  for (int r = 0; r < args.replicas; ++r) {
    std::string prefix = args.replicas == 1 ? args.out : args.out + ".r" + std::to_string(r);
    std::string density_path = prefix + (as_csv ? ".densities.csv" : ".densities.json");
    write_file(prefix + ".events.jsonl", results[static_cast<std::size_t>(r)].states);
    write_file(density_path, results[static_cast<std::size_t>(r)].densities);
    artifacts.push_back(prefix + ".events.jsonl");
    artifacts.push_back(density_path);
  }
  write_manifest(args.out, json{{"mode", "run-continuous"},
                                {"config", config},
                                {"replicas", args.replicas},
                                {"threads", args.threads},
                                {"m_max", args.max_level},
                                {"grid", grid},
                                {"format", args.format},
                                {"artifacts", artifacts}});
  return kExitOk;
}

// ----------------------------------------------------------------- limits

struct LimitsArgs {
  std::string graph_file;
  std::string config_file;
  CommonOverrides overrides;
  int max_level = 3;
  int samples = 20000;
  std::uint64_t matrix_seed = 7771;
  std::string out;
  std::string format = "csv";
};

int run_limits(const LimitsArgs& args) {
  bool as_csv = args.format == "csv";
  if (!args.graph_file.empty()) {
    std::string text = read_file(args.graph_file);
    gd_graph* g = nullptr;
    gd_status st = text.starts_with("n ") ? gd_graph_from_edgelist(text.c_str(), &g)
                                          : gd_graph_from_json(text.c_str(), &g);
    if (st != GD_OK) fail_api("cannot parse graph file");
    char* out = nullptr;
    if (gd_graph_density_vector(g, args.max_level, as_csv ? 1 : 0, &out) != GD_OK) {
      gd_graph_free(g);
      fail_api("density computation failed");
    }
    gd_graph_free(g);
    std::string path = args.out + (as_csv ? ".density.csv" : ".density.json");
    write_file(path, take_string(out));
    write_manifest(args.out, json{{"mode", "limits"},
                                  {"graph", args.graph_file},
                                  {"m_max", args.max_level},
                                  {"format", args.format},
                                  {"artifacts", json::array({path})}});
    return kExitOk;
  }
  if (args.config_file.empty()) fail("need --graph FILE or --config FILE");

  json config = parse_config_file(args.config_file);
  args.overrides.apply(config);
  config["retain_maps"] = true;  // the prediction needs the drawn maps
  if (!config.contains("seed")) fail("config has no \"seed\" and no --seed override was given");

  gd_dtraj* traj = nullptr;
  if (gd_discrete_run(config.dump().c_str(), &traj) != GD_OK) fail_api("run failed");
  char* report = nullptr;
  if (gd_dtraj_limit_report(traj, args.max_level, args.samples, args.matrix_seed, &report) != GD_OK) {
    gd_dtraj_free(traj);
    fail_api("limit report failed");
  }
  char* table = nullptr;
  if (gd_dtraj_density_table(traj, args.max_level, as_csv ? 1 : 0, &table) != GD_OK) {
    gd_dtraj_free(traj);
    fail_api("density export failed");
  }
  gd_dtraj_free(traj);

  std::string report_path = args.out + ".limit_report.json";
  std::string density_path = args.out + (as_csv ? ".densities.csv" : ".densities.json");
  write_file(report_path, take_string(report));
  write_file(density_path, take_string(table));
  write_manifest(args.out, json{{"mode", "limits"},
                                {"config", config},
                                {"m_max", args.max_level},
                                {"samples", args.samples},
                                {"matrix_seed", args.matrix_seed},
                                {"format", args.format},
                                {"artifacts", json::array({report_path, density_path})}});
  return kExitOk;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  json params = json::object();
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  char* report = nullptr;
  char* table = nullptr;
  int all_passed = 0;
  if (gd_verify(args.suite.c_str(), args.params.dump().c_str(), &report, &table, &all_passed) != GD_OK)
    fail_api("verify failed to run");
  std::cout << take_string(table);
  std::string report_text = take_string(report);
  if (!args.out.empty()) {
    write_file(args.out, report_text);
    write_manifest(args.out, json{{"mode", "verify"},
                                  {"suite", args.suite},
                                  {"params", args.params},
                                  {"artifacts", json::array({args.out})}});
  }
  return all_passed != 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphdyn: exchangeable graph dynamics simulator"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Sample a graph from a graphon");
  sample->add_option("--graphon", sample_args.graphon_file, "Graphon JSON file");
  sample->add_option("--p", sample_args.constant_p, "Constant graphon value");
  sample->add_option("--n", sample_args.n, "Vertex count")->required();
  sample->add_option("--seed", sample_args.seed, "Stream seed")->required()
      ->each([&](const std::string& v) {
        sample_args.seed = std::stoull(v);
        sample_args.seed_set = true;
      });
  sample->add_option("--count", sample_args.count, "Number of samples");
  sample->add_option("--out", sample_args.out, "Output prefix")->required();
  sample->add_option("--format", sample_args.format, "json | edgelist")
      ->check(CLI::IsMember({"json", "edgelist"}));

  DiscreteArgs discrete_args;
  auto* discrete = app.add_subcommand("run-discrete", "Run an iterated-rewiring chain");
  discrete->add_option("--config", discrete_args.config_file, "Run config JSON")->required();
  discrete->add_option("--seed", "Override config seed")
      ->each([&](const std::string& v) { discrete_args.overrides.seed = std::stoull(v); });
  discrete->add_option("--n", "Override truncation size")
      ->each([&](const std::string& v) { discrete_args.overrides.n = std::stoi(v); });
  discrete->add_option("--steps", "Override step count")
      ->each([&](const std::string& v) { discrete_args.overrides.steps = std::stoi(v); });
  discrete->add_option("--replicas", discrete_args.replicas, "Independent replicas");
  discrete->add_option("--threads", discrete_args.threads, "Worker threads for replicas");
  discrete->add_option("--m-max", discrete_args.max_level, "Density level cap");
  discrete->add_option("--out", discrete_args.out, "Output prefix")->required();
  discrete->add_option("--format", discrete_args.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  ContinuousArgs continuous_args;
  auto* continuous = app.add_subcommand("run-continuous", "Run the Poissonian jump process");
  continuous->add_option("--config", continuous_args.config_file, "Run config JSON")->required();
  continuous->add_option("--seed", "Override config seed")
      ->each([&](const std::string& v) { continuous_args.overrides.seed = std::stoull(v); });
  continuous->add_option("--n", "Override truncation size")
      ->each([&](const std::string& v) { continuous_args.overrides.n = std::stoi(v); });
  continuous->add_option("--horizon", "Override horizon")
      ->each([&](const std::string& v) { continuous_args.overrides.horizon = std::stod(v); });
  continuous->add_option("--replicas", continuous_args.replicas, "Independent replicas");
  continuous->add_option("--threads", continuous_args.threads, "Worker threads for replicas");
  continuous->add_option("--m-max", continuous_args.max_level, "Density level cap");
  continuous->add_option("--grid-points", continuous_args.grid_points, "Density grid resolution");
  continuous->add_option("--grid", continuous_args.grid, "Comma-separated density grid times");
  continuous->add_option("--out", continuous_args.out, "Output prefix")->required();
  continuous->add_option("--format", continuous_args.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  LimitsArgs limits_args;
  auto* limits = app.add_subcommand("limits", "Density vectors and limit-chain prediction");
  limits->add_option("--graph", limits_args.graph_file, "Graph file (JSON or edge list)");
  limits->add_option("--config", limits_args.config_file, "Discrete run config JSON");
  limits->add_option("--seed", "Override config seed")
      ->each([&](const std::string& v) { limits_args.overrides.seed = std::stoull(v); });
  limits->add_option("--m-max", limits_args.max_level, "Density level cap");
  limits->add_option("--samples", limits_args.samples, "Monte Carlo samples per limit matrix");
  limits->add_option("--matrix-seed", limits_args.matrix_seed, "Stream seed for matrix estimation");
  limits->add_option("--out", limits_args.out, "Output prefix")->required();
  limits->add_option("--format", limits_args.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", verify_args.suite,
                     "reversible | consistency | exchangeability | er-stationarity | sampler-laws | all");
  verify->add_option("--alpha", "Beta-mixture alpha")
      ->each([&](const std::string& v) { verify_args.params["alpha"] = std::stod(v); });
  verify->add_option("--beta", "Beta-mixture beta")
      ->each([&](const std::string& v) { verify_args.params["beta"] = std::stod(v); });
  verify->add_option("--p0", "Insertion coin")
      ->each([&](const std::string& v) { verify_args.params["p0"] = std::stod(v); });
  verify->add_option("--p1", "Retention coin")
      ->each([&](const std::string& v) { verify_args.params["p1"] = std::stod(v); });
  verify->add_option("--p", "Edge probability for sampler laws")
      ->each([&](const std::string& v) { verify_args.params["p"] = std::stod(v); });
  verify->add_option("--n", "Truncation size")
      ->each([&](const std::string& v) { verify_args.params["n"] = std::stoll(v); });
  verify->add_option("--steps", "Chain steps")
      ->each([&](const std::string& v) { verify_args.params["steps"] = std::stoll(v); });
  verify->add_option("--replicates", "Replicates")
      ->each([&](const std::string& v) { verify_args.params["replicates"] = std::stoll(v); });
  verify->add_option("--samples", "Samples")
      ->each([&](const std::string& v) { verify_args.params["samples"] = std::stoll(v); });
  verify->add_option("--seed", "Stream seed")
      ->each([&](const std::string& v) { verify_args.params["seed"] = std::stoll(v); });
  verify->add_option("--out", verify_args.out, "Report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (sample->parsed()) return run_sample(sample_args);
    if (discrete->parsed()) return run_discrete(discrete_args);
    if (continuous->parsed()) return run_continuous(continuous_args);
    if (limits->parsed()) return run_limits(limits_args);
    if (verify->parsed()) return run_verify(verify_args);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
