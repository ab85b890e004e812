#ifndef GRAPHDYN_CORE_SERIALIZE_HPP
#define GRAPHDYN_CORE_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "continuous_process.hpp"
#include "discrete_chain.hpp"
#include "graph.hpp"
#include "kernels.hpp"
#include "limit_chain.hpp"
#include "rewiring.hpp"

namespace graphdyn {

using json = nlohmann::json;

// Raised for malformed input text (JSON syntax, edge-list framing), as
// opposed to domain errors in well-formed input.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Graphs: {"n": 4, "edges": [[1,2],[2,4]]} with 1-based vertices, i < j.
json graph_to_json(const FiniteGraph& g);
FiniteGraph graph_from_json(const json& j);

// Plain-text edge list: header line "n <N>", then one "i j" line per edge.
std::string graph_to_edgelist(const FiniteGraph& g);
FiniteGraph graph_from_edgelist(const std::string& text);

// Rewiring maps: {"n": 3, "entries": [[i,j,from0,from1],...]} listing only
// non-identity entries.
json rewiring_to_json(const RewiringMap& w);
RewiringMap rewiring_from_json(const json& j);

// Graphons: {"grid": [[...],...]} or {"constant": p}.
json graphon_to_json(const Graphon& g);
Graphon graphon_from_json(const json& j);

// Rewiring kernels, one of:
//   {"grid": [[[q00,q01,q10,q11],...],...]}   cell simplexes over rules in
//                                             the order (0,0),(0,1),(1,0),(1,1)
//   {"constant": [q00,q01,q10,q11]}
//   {"product_er": {"p0": .., "p1": ..}}
//   {"identity": true}
json kernel_to_json(const RewiringKernel& k);
RewiringKernel kernel_from_json(const json& j);

json mixture_to_json(const KernelMixture& m);
KernelMixture mixture_from_json(const json& j);

json sigma_to_json(const SigmaMixture& s);
SigmaMixture sigma_from_json(const json& j);

json intensity_to_json(const LevyItoIntensity& in);
LevyItoIntensity intensity_from_json(const json& j);

// Run configs as consumed by the C API / CLI.
struct DiscreteRunSpec {
  DiscreteChainConfig config;
  FiniteGraph initial;

  DiscreteRunSpec() : initial(1) {}
};
DiscreteRunSpec discrete_spec_from_json(const json& j);
json discrete_spec_to_json(const DiscreteRunSpec& spec);

struct ContinuousRunSpec {
  LevyItoIntensity intensity;
  FiniteGraph initial;
  double horizon = 0.0;
  std::uint64_t seed = 0;

  ContinuousRunSpec() : initial(1) {}
};
ContinuousRunSpec continuous_spec_from_json(const json& j);
json continuous_spec_to_json(const ContinuousRunSpec& spec);

json event_to_json(const EventRecord& ev);
json limit_vector_to_json(const GraphLimitVector& v);
json prediction_report_to_json(const PredictionReport& r);

// "initial": explicit graph object, {"empty": n}, or {"complete": n}.
FiniteGraph initial_graph_from_json(const json& j);

json parse_json_text(const std::string& text);

}  // namespace graphdyn

#endif
