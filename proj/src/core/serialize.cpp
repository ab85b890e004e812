#include "serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace graphdyn {

namespace {

int require_int(const json& j, const char* key, int min_value) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw std::invalid_argument(std::string("missing integer field \"") + key + "\"");
  int v = j[key].get<int>();
  if (v < min_value)
    throw std::invalid_argument(std::string("field \"") + key + "\" below minimum");
  return v;
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument(std::string("missing numeric field \"") + key + "\"");
  return j[key].get<double>();
}

}  // namespace

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

json graph_to_json(const FiniteGraph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges()) edges.push_back(json::array({i, j}));
  return json{{"n", g.order()}, {"edges", std::move(edges)}};
}

FiniteGraph graph_from_json(const json& j) {
  int n = require_int(j, "n", 1);
  FiniteGraph g(n);
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw std::invalid_argument("graph: \"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw std::invalid_argument("graph: each edge must be a pair of integers");
      int a = e[0].get<int>();
      int b = e[1].get<int>();
      if (a == b) throw std::invalid_argument("graph: loops are not allowed");
      g.set_edge(a, b, true);
    }
  }
  return g;
}

std::string graph_to_edgelist(const FiniteGraph& g) {
  std::ostringstream out;
  out << "n " << g.order() << "\n";
  for (auto [i, j] : g.edges()) out << i << " " << j << "\n";
  return out.str();
}

FiniteGraph graph_from_edgelist(const std::string& text) {
  std::istringstream in(text);
  std::string head;
  int n = 0;
  if (!(in >> head >> n) || head != "n" || n < 1)
    throw ParseError("edge list: expected header \"n <N>\"");
  FiniteGraph g(n);
  int a = 0;
  int b = 0;
  while (in >> a >> b) {
    if (a == b) throw std::invalid_argument("edge list: loops are not allowed");
    g.set_edge(a, b, true);
  }
  if (!in.eof() && in.fail()) throw ParseError("edge list: malformed edge line");
  return g;
}

json rewiring_to_json(const RewiringMap& w) {
  json entries = json::array();
  for (const auto& [pair, rule] : w.non_identity_rules())
    entries.push_back(json::array({pair.first, pair.second, static_cast<int>(rule.from0),
                                   static_cast<int>(rule.from1)}));
  return json{{"n", w.order()}, {"entries", std::move(entries)}};
}

RewiringMap rewiring_from_json(const json& j) {
  int n = require_int(j, "n", 1);
  RewiringMap w(n);
  if (j.contains("entries")) {
    if (!j["entries"].is_array()) throw std::invalid_argument("rewiring map: \"entries\" must be an array");
    for (const auto& e : j["entries"]) {
      if (!e.is_array() || e.size() != 4) throw std::invalid_argument("rewiring map: entries are [i,j,from0,from1]");
      int a = e[0].get<int>();
      int b = e[1].get<int>();
      int r0 = e[2].get<int>();
      int r1 = e[3].get<int>();
      if ((r0 != 0 && r0 != 1) || (r1 != 0 && r1 != 1))
        throw std::invalid_argument("rewiring map: rule bits must be 0 or 1");
      w.set_rule(a, b, EdgeRule{static_cast<std::uint8_t>(r0), static_cast<std::uint8_t>(r1)});
    }
  }
  return w;
}

json graphon_to_json(const Graphon& g) {
  json grid = json::array();
  for (int a = 0; a < g.resolution(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.resolution(); ++b) row.push_back(g.cell(a, b));
    grid.push_back(std::move(row));
  }
  return json{{"grid", std::move(grid)}};
}

Graphon graphon_from_json(const json& j) {
  if (j.is_number()) return Graphon::constant(j.get<double>());
  if (j.contains("constant")) return Graphon::constant(require_number(j, "constant"));
  if (!j.contains("grid") || !j["grid"].is_array())
    throw std::invalid_argument("graphon: expected \"grid\" or \"constant\"");
  const auto& grid = j["grid"];
  auto k = static_cast<int>(grid.size());
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (const auto& row : grid) {
    if (!row.is_array() || static_cast<int>(row.size()) != k)
      throw std::invalid_argument("graphon: grid must be square");
    for (const auto& x : row) cells.push_back(x.get<double>());
  }
  return Graphon(k, std::move(cells));
}

json kernel_to_json(const RewiringKernel& k) {
  json grid = json::array();
  for (int a = 0; a < k.resolution(); ++a) {
    json row = json::array();
    for (int b = 0; b < k.resolution(); ++b) {
      const auto& q = k.cell(a, b);
      row.push_back(json::array({q[0], q[1], q[2], q[3]}));
    }
    grid.push_back(std::move(row));
  }
  return json{{"grid", std::move(grid)}};
}

namespace {

RuleDistribution rule_distribution_from_json(const json& cell) {
  if (!cell.is_array() || cell.size() != 4)
    throw std::invalid_argument("kernel: each cell is a 4-vector over rules (0,0),(0,1),(1,0),(1,1)");
  return RuleDistribution{cell[0].get<double>(), cell[1].get<double>(), cell[2].get<double>(),
                          cell[3].get<double>()};
}

}  // namespace

RewiringKernel kernel_from_json(const json& j) {
  if (j.contains("identity")) return RewiringKernel::identity_concentrated();
  if (j.contains("product_er")) {
    const auto& p = j["product_er"];
    return RewiringKernel::product_er(require_number(p, "p0"), require_number(p, "p1"));
  }
  if (j.contains("constant")) return RewiringKernel::constant(rule_distribution_from_json(j["constant"]));
  if (!j.contains("grid") || !j["grid"].is_array())
    throw std::invalid_argument("kernel: expected \"grid\", \"constant\", \"product_er\", or \"identity\"");
  const auto& grid = j["grid"];
  auto k = static_cast<int>(grid.size());
  std::vector<RuleDistribution> cells;
  cells.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (const auto& row : grid) {
    if (!row.is_array() || static_cast<int>(row.size()) != k)
      throw std::invalid_argument("kernel: grid must be square");
    for (const auto& cell : row) cells.push_back(rule_distribution_from_json(cell));
  }
  return RewiringKernel(k, std::move(cells));
}

json mixture_to_json(const KernelMixture& m) {
  json out = json::array();
  for (std::size_t k = 0; k < m.weights.size(); ++k)
    out.push_back(json{{"weight", m.weights[k]}, {"kernel", kernel_to_json(m.kernels[k])}});
  return out;
}

KernelMixture mixture_from_json(const json& j) {
  KernelMixture m;
  if (j.is_array()) {
    for (const auto& item : j) {
      m.weights.push_back(item.contains("weight") ? item["weight"].get<double>() : 1.0);
      m.kernels.push_back(kernel_from_json(item.contains("kernel") ? item["kernel"] : item));
    }
  } else {
    m.weights.push_back(1.0);
    m.kernels.push_back(kernel_from_json(j));
  }
  m.validate();
  return m;
}

json sigma_to_json(const SigmaMixture& s) {
  json out = json::array();
  for (std::size_t k = 0; k < s.weights.size(); ++k) {
    const auto& m = s.matrices[k].s;
    out.push_back(json{{"weight", s.weights[k]},
                       {"matrix", json::array({json::array({m[0][0], m[0][1]}),
                                               json::array({m[1][0], m[1][1]})})}});
  }
  return out;
}

namespace {

StochasticMatrix2 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    throw std::invalid_argument("sigma: each matrix is 2x2");
  StochasticMatrix2 m;
  m.s = {{{j[0][0].get<double>(), j[0][1].get<double>()},
          {j[1][0].get<double>(), j[1][1].get<double>()}}};
  m.validate();
  return m;
}

}  // namespace

SigmaMixture sigma_from_json(const json& j) {
  SigmaMixture s;
  if (j.is_array() && !j.empty() && j[0].is_object()) {
    for (const auto& item : j) {
      s.weights.push_back(item.contains("weight") ? item["weight"].get<double>() : 1.0);
      if (!item.contains("matrix")) throw std::invalid_argument("sigma: mixture items need a \"matrix\"");
      s.matrices.push_back(matrix_from_json(item["matrix"]));
    }
  } else {
    s.weights.push_back(1.0);
    s.matrices.push_back(matrix_from_json(j));
  }
  s.validate();
  return s;
}

json intensity_to_json(const LevyItoIntensity& in) {
  json upsilon = json::array();
  for (const auto& [rate, kernel] : in.upsilon)
    upsilon.push_back(json{{"rate", rate}, {"kernel", kernel_to_json(kernel)}});
  return json{{"e0", in.e0},
              {"e1", in.e1},
              {"v", in.v},
              {"sigma", sigma_to_json(in.sigma)},
              {"upsilon", std::move(upsilon)}};
}

LevyItoIntensity intensity_from_json(const json& j) {
  LevyItoIntensity in;
  if (j.contains("e0")) in.e0 = j["e0"].get<double>();
  if (j.contains("e1")) in.e1 = j["e1"].get<double>();
  if (j.contains("v")) in.v = j["v"].get<double>();
  if (j.contains("sigma")) in.sigma = sigma_from_json(j["sigma"]);
  if (j.contains("upsilon")) {
    if (!j["upsilon"].is_array()) throw std::invalid_argument("intensity: \"upsilon\" must be an array");
    for (const auto& item : j["upsilon"]) {
      double rate = require_number(item, "rate");
      if (!item.contains("kernel")) throw std::invalid_argument("intensity: upsilon items need a \"kernel\"");
      in.upsilon.emplace_back(rate, kernel_from_json(item["kernel"]));
    }
  }
  in.validate();
  return in;
}

FiniteGraph initial_graph_from_json(const json& j) {
  if (j.contains("empty")) return FiniteGraph(j["empty"].get<int>());
  if (j.contains("complete")) return FiniteGraph::complete(j["complete"].get<int>());
  return graph_from_json(j);
}

DiscreteRunSpec discrete_spec_from_json(const json& j) {
  DiscreteRunSpec spec;
  spec.config.n = require_int(j, "n", 1);
  spec.config.steps = require_int(j, "steps", 0);
  if (!j.contains("seed")) throw std::invalid_argument("discrete config: \"seed\" is mandatory");
  spec.config.seed = j["seed"].get<std::uint64_t>();
  if (!j.contains("kernel_mixture")) throw std::invalid_argument("discrete config: missing \"kernel_mixture\"");
  spec.config.mixture = mixture_from_json(j["kernel_mixture"]);
  if (j.contains("retain_maps")) spec.config.retain_maps = j["retain_maps"].get<bool>();
  spec.initial = j.contains("initial") ? initial_graph_from_json(j["initial"])
                                       : FiniteGraph(spec.config.n);
  if (spec.initial.order() != spec.config.n)
    throw std::invalid_argument("discrete config: initial graph order does not match n");
  spec.config.validate();
  return spec;
}

json discrete_spec_to_json(const DiscreteRunSpec& spec) {
  return json{{"n", spec.config.n},
              {"steps", spec.config.steps},
              {"seed", spec.config.seed},
              {"retain_maps", spec.config.retain_maps},
              {"kernel_mixture", mixture_to_json(spec.config.mixture)},
              {"initial", graph_to_json(spec.initial)}};
}

ContinuousRunSpec continuous_spec_from_json(const json& j) {
  ContinuousRunSpec spec;
  int n = require_int(j, "n", 1);
  spec.horizon = require_number(j, "horizon");
  if (!(spec.horizon >= 0.0)) throw std::invalid_argument("continuous config: horizon must be nonnegative");
  if (!j.contains("seed")) throw std::invalid_argument("continuous config: \"seed\" is mandatory");
  spec.seed = j["seed"].get<std::uint64_t>();
  if (!j.contains("intensity")) throw std::invalid_argument("continuous config: missing \"intensity\"");
  spec.intensity = intensity_from_json(j["intensity"]);
  spec.initial = j.contains("initial") ? initial_graph_from_json(j["initial"]) : FiniteGraph(n);
  if (spec.initial.order() != n)
    throw std::invalid_argument("continuous config: initial graph order does not match n");
  return spec;
}

json continuous_spec_to_json(const ContinuousRunSpec& spec) {
  return json{{"n", spec.initial.order()},
              {"horizon", spec.horizon},
              {"seed", spec.seed},
              {"intensity", intensity_to_json(spec.intensity)},
              {"initial", graph_to_json(spec.initial)}};
}

json event_to_json(const EventRecord& ev) {
  json payload;
  if (const auto* flip = std::get_if<EdgeFlipPayload>(&ev.payload)) {
    payload = json{{"pair", json::array({flip->i, flip->j})}, {"bit", static_cast<int>(flip->bit)}};
  } else if (const auto* vu = std::get_if<VertexUpdatePayload>(&ev.payload)) {
    payload = json{{"vertex", vu->vertex},
                   {"matrix_index", vu->matrix_index},
                   {"map", rewiring_to_json(vu->map)}};
  } else {
    const auto& gr = std::get<GlobalRewirePayload>(ev.payload);
    payload = json{{"kernel_index", gr.kernel_index}, {"map", rewiring_to_json(gr.map)}};
  }
  return json{{"time", ev.time},
              {"kind", event_kind_name(ev.kind)},
              {"payload", std::move(payload)},
              {"silent", ev.silent}};
}

json limit_vector_to_json(const GraphLimitVector& v) {
  json levels = json::array();
  for (int k = 1; k <= v.max_level(); ++k) {
    json values = json::array();
    for (double x : v.level(k)) values.push_back(x);
    levels.push_back(json{{"level", k}, {"exact", v.level_exact(k)}, {"values", std::move(values)}});
  }
  return json{{"max_level", v.max_level()}, {"levels", std::move(levels)}};
}

json prediction_report_to_json(const PredictionReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    json per_level = json::array();
    for (double x : s.per_level) per_level.push_back(x);
    steps.push_back(json{{"step", s.step}, {"per_level", std::move(per_level)}, {"max_abs", s.max_abs}});
  }
  return json{{"max_level", r.max_level}, {"overall_max", r.overall_max}, {"steps", std::move(steps)}};
}

}  // namespace graphdyn
