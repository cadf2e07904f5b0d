#include "hetn2v/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "hetn2v/error.hpp"

namespace hetn2v {

namespace {

// Reusable scratch for repeated sampling; one per worker thread.
class StepSampler {
 public:
  StepSampler(const HetMultigraph& g, const BiasParams& params) : g_(g), params_(params) {}

  std::optional<WalkerState> first(NodeId start, SplitMix64& rng) {
    const auto adj = g_.neighbors(start);
    if (adj.empty()) return std::nullopt;
    cumulative_.resize(adj.size());
    double total = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      total += adj[i].weight;
      cumulative_[i] = total;
    }
    const auto& pick = adj[draw(total, rng)];
    return WalkerState{start, pick.etype, pick.endpoint};
  }

  std::optional<WalkerState> next(const WalkerState& state, SplitMix64& rng) {
    const auto adj = g_.neighbors(state.current);
    if (adj.empty()) return std::nullopt;
    cumulative_.resize(adj.size());
    const NodeTypeId from_type = g_.node_type(state.current);
    double total = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const EdgeInstance& inst = adj[i];
      const int d = g_.distance_class(state.prev, inst.endpoint);
      total += gamma(params_, d, from_type, g_.node_type(inst.endpoint),
                     state.arrival_etype, inst.etype) *
               inst.weight;
      cumulative_[i] = total;
    }
    const auto& pick = adj[draw(total, rng)];
    return WalkerState{state.current, pick.etype, pick.endpoint};
  }

 private:
  std::size_t draw(double total, SplitMix64& rng) {
    const double u = rng.next_double() * total;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, cumulative_.size() - 1);
  }

  const HetMultigraph& g_;
  const BiasParams& params_;
  std::vector<double> cumulative_;
};

Walk run_walk(StepSampler& sampler, NodeId start, std::uint32_t length, SplitMix64& rng) {
  Walk walk;
  walk.nodes.reserve(length);
  walk.nodes.push_back(start);
  if (length < 2) return walk;
  walk.edge_types.reserve(length - 1);
  auto state = sampler.first(start, rng);
  while (state) {
    walk.nodes.push_back(state->current);
    walk.edge_types.push_back(state->arrival_etype);
    if (walk.nodes.size() >= length) break;
    state = sampler.next(*state, rng);
  }
  return walk;
}

// Maps corpus node ids onto graph node ids by name.
std::vector<NodeId> resolve_corpus_ids(const WalkCorpus& corpus, const HetMultigraph& g) {
  std::vector<NodeId> to_graph(corpus.node_names.size());
  for (std::size_t i = 0; i < corpus.node_names.size(); ++i) {
    const auto id = g.node_vocab().find(corpus.node_names[i]);
    if (!id)
      throw ValidationError("corpus references unknown node '" + corpus.node_names[i] +
                            "'");
    to_graph[i] = *id;
  }
  return to_graph;
}

}  // namespace

std::vector<Transition> transition_distribution(const HetMultigraph& g,
                                                const BiasParams& params,
                                                const WalkerState& state) {
  const auto adj = g.neighbors(state.current);
  std::vector<Transition> result;
  if (adj.empty()) return result;
  result.reserve(adj.size());
  const NodeTypeId from_type = g.node_type(state.current);
  double total = 0.0;
  for (const EdgeInstance& inst : adj) {
    const int d = g.distance_class(state.prev, inst.endpoint);
    const double pi = gamma(params, d, from_type, g.node_type(inst.endpoint),
                            state.arrival_etype, inst.etype) *
                      inst.weight;
    total += pi;
    result.push_back({inst.endpoint, inst.etype, pi});
  }
  for (Transition& t : result) t.prob /= total;
  return result;
}

std::optional<WalkerState> sample_next(const HetMultigraph& g, const BiasParams& params,
                                       const WalkerState& state, SplitMix64& rng) {
  StepSampler sampler(g, params);
  return sampler.next(state, rng);
}

std::optional<WalkerState> first_step(const HetMultigraph& g, const BiasParams& params,
                                      NodeId start, SplitMix64& rng) {
  (void)params;  // the first hop is weight-proportional by contract
  StepSampler sampler(g, params);
  return sampler.first(start, rng);
}

WalkCorpus generate_walks(const HetMultigraph& g, const BiasParams& params,
                          const WalkConfig& cfg) {
  if (cfg.walk_length < 1) throw std::invalid_argument("walk_length must be >= 1");
  if (cfg.walks_per_node < 1) throw std::invalid_argument("walks_per_node must be >= 1");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");

  const std::uint64_t n = g.node_count();
  const std::uint64_t m = cfg.walks_per_node;
  const std::uint64_t total = n * m;

  WalkCorpus corpus;
  corpus.node_names = g.node_vocab().names();
  corpus.has_edge_trace = true;
  corpus.walks.resize(total);

  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    StepSampler sampler(g, params);
    for (std::uint64_t w = lo; w < hi; ++w) {
      const NodeId start = static_cast<NodeId>(w / m);
      const std::uint64_t replicate = w % m;
      SplitMix64 rng = SplitMix64::for_stream(cfg.seed, start, replicate);
      corpus.walks[w] = run_walk(sampler, start, cfg.walk_length, rng);
    }
  };

  const std::uint64_t nthreads = std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(cfg.threads, total == 0 ? 1 : total));
  if (nthreads == 1) {
    worker(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::uint64_t t = 0; t < nthreads; ++t) {
      const std::uint64_t lo = total * t / nthreads;
      const std::uint64_t hi = total * (t + 1) / nthreads;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return corpus;
}

WalkCorpus canonicalize_corpus(const WalkCorpus& corpus) {
  WalkCorpus out;
  out.has_edge_trace = corpus.has_edge_trace;
  out.walks.reserve(corpus.walks.size());
  std::vector<NodeId> remap(corpus.node_names.size(), UINT32_MAX);
  for (const Walk& walk : corpus.walks) {
    Walk mapped;
    mapped.nodes.reserve(walk.nodes.size());
    mapped.edge_types = walk.edge_types;
    for (const NodeId v : walk.nodes) {
      if (remap[v] == UINT32_MAX) {
        remap[v] = static_cast<NodeId>(out.node_names.size());
        out.node_names.push_back(corpus.node_names[v]);
      }
      mapped.nodes.push_back(remap[v]);
    }
    out.walks.push_back(std::move(mapped));
  }
  return out;
}

WalkStats walk_stats(const WalkCorpus& corpus, const HetMultigraph& g) {
  WalkStats stats;
  stats.node_type_visit_fraction.assign(g.node_type_count(), 0.0);
  stats.edge_type_traversal_fraction.assign(g.edge_type_count(), 0.0);
  const std::vector<NodeId> to_graph = resolve_corpus_ids(corpus, g);

  std::vector<double> type_visits(g.node_type_count(), 0.0);
  std::vector<double> etype_mass(g.edge_type_count(), 0.0);
  std::uint64_t switches = 0;
  double edge_switch_mass = 0.0;
  std::uint64_t pair_count = 0;

  // Per-step edge-type attribution: exact from the trace, else spread over
  // the parallel edges of the pair in proportion to weight.
  std::vector<std::pair<EdgeTypeId, double>> prev_attr;
  std::vector<std::pair<EdgeTypeId, double>> cur_attr;
  auto attribute = [&](NodeId u, NodeId v, const Walk& walk, std::size_t step,
                       std::vector<std::pair<EdgeTypeId, double>>& attr) {
    attr.clear();
    if (corpus.has_edge_trace) {
      attr.emplace_back(walk.edge_types[step], 1.0);
      return;
    }
    const auto adj = g.neighbors(u);
    auto it = std::lower_bound(
        adj.begin(), adj.end(), v,
        [](const EdgeInstance& e, NodeId t) { return e.endpoint < t; });
    double total = 0.0;
    for (; it != adj.end() && it->endpoint == v; ++it) {
      attr.emplace_back(it->etype, it->weight);
      total += it->weight;
    }
    if (attr.empty())
      throw ValidationError("corpus step " + corpus.node_names[u] + " -> " +
                            corpus.node_names[v] + " has no edge in the graph");
    for (auto& [t, w] : attr) w /= total;
  };

  for (const Walk& walk : corpus.walks) {
    if (corpus.has_edge_trace && walk.edge_types.size() + 1 != walk.nodes.size())
      throw ValidationError("walk edge trace length does not match node count");
    prev_attr.clear();
    for (std::size_t i = 0; i < walk.nodes.size(); ++i) {
      const NodeId v = to_graph[walk.nodes[i]];
      type_visits[g.node_type(v)] += 1.0;
      ++stats.node_visits;
      if (i == 0) continue;
      const NodeId u = to_graph[walk.nodes[i - 1]];
      ++stats.step_count;
      if (g.node_type(u) != g.node_type(v)) ++switches;
      attribute(u, v, walk, i - 1, cur_attr);
      for (const auto& [t, w] : cur_attr) etype_mass[t] += w;
      if (!prev_attr.empty()) {
        ++pair_count;
        double same = 0.0;
        for (const auto& [t1, w1] : prev_attr)
          for (const auto& [t2, w2] : cur_attr)
            if (t1 == t2) same += w1 * w2;
        edge_switch_mass += 1.0 - same;
      }
      std::swap(prev_attr, cur_attr);
    }
    ++stats.walk_count;
  }

  if (stats.node_visits > 0)
    for (std::size_t t = 0; t < type_visits.size(); ++t)
      stats.node_type_visit_fraction[t] =
          type_visits[t] / static_cast<double>(stats.node_visits);
  if (stats.step_count > 0) {
    for (std::size_t t = 0; t < etype_mass.size(); ++t)
      stats.edge_type_traversal_fraction[t] =
          etype_mass[t] / static_cast<double>(stats.step_count);
    stats.node_switch_rate =
        static_cast<double>(switches) / static_cast<double>(stats.step_count);
  }
  if (pair_count > 0)
    stats.edge_switch_rate = edge_switch_mass / static_cast<double>(pair_count);
  return stats;
}

}  // namespace hetn2v
