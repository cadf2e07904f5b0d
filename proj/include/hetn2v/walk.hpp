#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetn2v/bias.hpp"
#include "hetn2v/graph.hpp"
#include "hetn2v/rng.hpp"

namespace hetn2v {

// Second-order walker memory: current node, the node before it, and the
// type of the edge the walker arrived by.
struct WalkerState {
  NodeId prev;
  EdgeTypeId arrival_etype;
  NodeId current;

  friend bool operator==(const WalkerState&, const WalkerState&) = default;
};

struct WalkConfig {
  std::uint32_t walk_length = 80;     // nodes per walk
  std::uint32_t walks_per_node = 10;  // replicates per start node
  std::uint64_t seed = 1;
  std::uint32_t threads = 1;
};

// One walk: the visited nodes plus the type of each traversed edge
// (edge_types.size() == nodes.size() - 1). The on-disk format keeps only the
// node sequence.
struct Walk {
  std::vector<NodeId> nodes;
  std::vector<EdgeTypeId> edge_types;
};

struct WalkCorpus {
  std::vector<Walk> walks;              // ordered by (start node, replicate)
  std::vector<std::string> node_names;  // id -> external name
  bool has_edge_trace = true;           // false once round-tripped through a file
};

// Re-interns corpus tokens in first-appearance order. Corpora coming from
// the engine and from a walk file then index their vocabularies identically,
// which keeps fused and staged embedding runs bit-equal.
WalkCorpus canonicalize_corpus(const WalkCorpus& corpus);

struct Transition {
  NodeId node;
  EdgeTypeId etype;
  double prob;
};

// Exact next-step distribution out of `state`, one entry per adjacency
// instance of the current node; probabilities sum to 1. Empty result signals
// a dead end (degree-0 current node).
std::vector<Transition> transition_distribution(const HetMultigraph& g,
                                                const BiasParams& params,
                                                const WalkerState& state);

std::optional<WalkerState> sample_next(const HetMultigraph& g, const BiasParams& params,
                                       const WalkerState& state, SplitMix64& rng);

// First hop out of `start`, proportional to edge weight alone: without a
// previous node there is nothing for p, q or the switch models to act on.
std::optional<WalkerState> first_step(const HetMultigraph& g, const BiasParams& params,
                                      NodeId start, SplitMix64& rng);

// walks_per_node walks of up to walk_length nodes from every node. Walk
// (v, j) draws from a stream keyed by (seed, v, j) and lands at index
// v * walks_per_node + j, so output is identical for any thread count.
WalkCorpus generate_walks(const HetMultigraph& g, const BiasParams& params,
                          const WalkConfig& cfg);

struct WalkStats {
  std::uint64_t walk_count = 0;
  std::uint64_t node_visits = 0;
  std::uint64_t step_count = 0;  // traversed edges
  std::vector<double> node_type_visit_fraction;      // indexed by NodeTypeId
  std::vector<double> edge_type_traversal_fraction;  // indexed by EdgeTypeId
  double node_switch_rate = 0.0;  // steps whose endpoints have different node types
  double edge_switch_rate = 0.0;  // consecutive steps traversing different edge types
};

// Corpus composition report. Corpus names are resolved against the graph's
// vocabulary; unknown names are a validation error. With an edge trace the
// edge-type numbers are exact; corpora read back from disk attribute each
// step to the parallel edges of its node pair proportionally to weight.
WalkStats walk_stats(const WalkCorpus& corpus, const HetMultigraph& g);

}  // namespace hetn2v
