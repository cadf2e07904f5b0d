#include "hetn2v/walk.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

#include "hetn2v/error.hpp"
#include "support/reference.hpp"
#include "support/test_graphs.hpp"

using namespace hetn2v;
using hetn2v::testing::all_states;
using hetn2v::testing::random_graph;

namespace {

WalkerState state_of(const HetMultigraph& g, const std::string& prev,
                     const std::string& cur, const std::string& etype) {
  return {*g.node_vocab().find(prev), *g.edge_type_vocab().find(etype),
          *g.node_vocab().find(cur)};
}

// probability mass per (node, edge type); self-loops store two identical
// instances, so aggregate before comparing against sampled counts
std::map<std::pair<NodeId, EdgeTypeId>, double> mass_by_candidate(
    const std::vector<Transition>& dist) {
  std::map<std::pair<NodeId, EdgeTypeId>, double> mass;
  for (const auto& t : dist) mass[{t.node, t.etype}] += t.prob;
  return mass;
}

}  // namespace

TEST_CASE("neutral parameters give weight-proportional transitions") {
  GraphBuilder b;
  b.add_edge("v", "x", "t", 1.0);
  b.add_edge("v", "y", "t", 3.0);
  b.add_edge("v", "r", "t", 4.0);
  const auto g = b.build();
  const auto dist =
      transition_distribution(g, BiasParams(), state_of(g, "r", "v", "t"));
  REQUIRE(dist.size() == 3);
  double sum = 0.0;
  for (const auto& t : dist) {
    const double w = g.neighbors(*g.node_vocab().find("v"))[0].weight;
    (void)w;
    sum += t.prob;
  }
  CHECK(std::fabs(sum - 1.0) <= 1e-12);
  const auto mass = mass_by_candidate(dist);
  CHECK(mass.at({*g.node_vocab().find("x"), 0}) == doctest::Approx(1.0 / 8.0));
  CHECK(mass.at({*g.node_vocab().find("y"), 0}) == doctest::Approx(3.0 / 8.0));
  CHECK(mass.at({*g.node_vocab().find("r"), 0}) == doctest::Approx(4.0 / 8.0));
}

TEST_CASE("worked second-order example with a node switch") {
  // prev r has a different type from current v; candidates sit at the three
  // distances, on both sides of the type boundary
  GraphBuilder b;
  b.add_edge("r", "v", "t");
  b.add_edge("v", "xs1", "t");
  b.add_edge("r", "xs1", "t");
  b.add_edge("v", "xs2", "t");
  b.add_edge("v", "xo2", "t");
  b.set_node_type("r", "B");
  b.set_node_type("xo2", "B");
  b.set_node_type("v", "A");
  b.set_node_type("xs1", "A");
  b.set_node_type("xs2", "A");
  const auto g = b.build();

  const double p = 2.0, q = 3.0, s = 4.0;
  const BiasParams params(p, q, SwitchModel::uniform(s));
  const auto dist = transition_distribution(g, params, state_of(g, "r", "v", "t"));
  const auto mass = mass_by_candidate(dist);

  const double pi_r = 1.0 / (p * s);  // backtrack across the type boundary
  const double pi_xs1 = 1.0;          // distance 1, same type
  const double pi_xs2 = 1.0 / q;      // distance 2, same type
  const double pi_xo2 = 1.0 / (q * s);
  const double total = pi_r + pi_xs1 + pi_xs2 + pi_xo2;

  CHECK(mass.at({*g.node_vocab().find("r"), 0}) ==
        doctest::Approx(pi_r / total).epsilon(1e-12));
  CHECK(mass.at({*g.node_vocab().find("xs1"), 0}) ==
        doctest::Approx(pi_xs1 / total).epsilon(1e-12));
  CHECK(mass.at({*g.node_vocab().find("xs2"), 0}) ==
        doctest::Approx(pi_xs2 / total).epsilon(1e-12));
  CHECK(mass.at({*g.node_vocab().find("xo2"), 0}) ==
        doctest::Approx(pi_xo2 / total).epsilon(1e-12));
}

TEST_CASE("normalization arithmetic") {
  GraphBuilder b;
  b.add_edge("v", "x", "t", 0.5);
  b.add_edge("v", "y", "t", 1.5);
  b.add_edge("r", "v", "t", 1.0);
  b.add_edge("r", "x", "t", 1.0);
  b.add_edge("r", "y", "t", 1.0);
  const auto g = b.build();
  // p = q = 1: every candidate keeps its raw weight
  const auto dist =
      transition_distribution(g, BiasParams(), state_of(g, "r", "v", "t"));
  const auto mass = mass_by_candidate(dist);
  CHECK(mass.at({*g.node_vocab().find("x"), 0}) == doctest::Approx(0.5 / 3.0));
  CHECK(mass.at({*g.node_vocab().find("y"), 0}) == doctest::Approx(1.5 / 3.0));
}

TEST_CASE("backtracking over a parallel edge of another type costs 1/(p e)") {
  GraphBuilder b;
  b.add_edge("u", "v", "t0", 1.0);
  b.add_edge("u", "v", "t1", 1.0);
  const auto g = b.build();
  const double p = 2.0, e = 4.0;
  const BiasParams params(p, 1.0, {}, SwitchModel::uniform(e));
  const auto dist = transition_distribution(g, params, state_of(g, "u", "v", "t0"));
  const auto mass = mass_by_candidate(dist);
  const NodeId u = *g.node_vocab().find("u");
  // unnormalized: same edge type 1/p, switched edge type 1/(p e)
  const double total = 1.0 / p + 1.0 / (p * e);
  CHECK(mass.at({u, *g.edge_type_vocab().find("t0")}) ==
        doctest::Approx((1.0 / p) / total).epsilon(1e-12));
  CHECK(mass.at({u, *g.edge_type_vocab().find("t1")}) ==
        doctest::Approx((1.0 / (p * e)) / total).epsilon(1e-12));
}

TEST_CASE("distributions normalize and stay positive across random graphs") {
  for (std::uint64_t seed : {5ull, 6ull}) {
    const auto rg = random_graph({.nodes = 20,
                                  .node_types = 3,
                                  .edge_types = 3,
                                  .edge_prob = 0.2,
                                  .parallel_prob = 0.3,
                                  .seed = seed});
    const BiasParams params(0.5, 2.0, SwitchModel::uniform(0.7),
                            SwitchModel::uniform(1.5));
    for (const auto& state : all_states(rg.graph)) {
      const auto dist = transition_distribution(rg.graph, params, state);
      double sum = 0.0;
      for (const auto& t : dist) {
        CHECK(t.prob > 0.0);
        sum += t.prob;
      }
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("dead ends are signalled") {
  GraphBuilder b;
  b.add_node("alone");
  b.add_edge("a", "b", "t");
  const auto g = b.build();
  const NodeId alone = *g.node_vocab().find("alone");
  SplitMix64 rng(1);
  CHECK_FALSE(first_step(g, BiasParams(), alone, rng).has_value());
  const WalkerState stuck{*g.node_vocab().find("a"), 0, alone};
  CHECK(transition_distribution(g, BiasParams(), stuck).empty());
  CHECK_FALSE(sample_next(g, BiasParams(), stuck, rng).has_value());
}

TEST_CASE("degree-1 neighborhoods are forced moves") {
  const auto g = testing::path_abc();
  const auto dist =
      transition_distribution(g, BiasParams(4.0, 0.25), state_of(g, "b", "a", "t"));
  REQUIRE(dist.size() == 1);
  CHECK(dist[0].prob == 1.0);
  SplitMix64 rng(3);
  const auto next = sample_next(g, BiasParams(4.0, 0.25), state_of(g, "b", "a", "t"), rng);
  REQUIRE(next.has_value());
  CHECK(next->current == *g.node_vocab().find("b"));
  CHECK(next->prev == *g.node_vocab().find("a"));
}

TEST_CASE("sampling matches the exact distribution (Monte Carlo)") {
  GraphBuilder b;
  b.add_edge("r", "v", "t0", 1.0);
  b.add_edge("v", "x", "t0", 2.0);
  b.add_edge("v", "y", "t1", 0.5);
  b.add_edge("r", "x", "t0", 1.0);
  b.set_node_type("y", "other");
  const auto g = b.build();
  const BiasParams params(2.0, 0.5, SwitchModel::uniform(0.5),
                          SwitchModel::uniform(2.0));
  const auto state = state_of(g, "r", "v", "t0");
  const auto dist = transition_distribution(g, params, state);
  const auto expected = mass_by_candidate(dist);

  std::map<std::pair<NodeId, EdgeTypeId>, std::uint64_t> counts;
  SplitMix64 rng = SplitMix64::for_stream(42, 0, 0);
  const std::uint64_t samples = 1000000;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto next = sample_next(g, params, state, rng);
    REQUIRE(next.has_value());
    counts[{next->current, next->arrival_etype}]++;
  }
  double tv = 0.0;
  for (const auto& [key, prob] : expected) {
    const double freq =
        static_cast<double>(counts[key]) / static_cast<double>(samples);
    tv += std::fabs(freq - prob);
  }
  CHECK(tv / 2.0 < 0.01);
}

TEST_CASE("empirical frequencies pass a chi-square check on a random graph") {
  const auto rg = random_graph({.nodes = 30,
                                .node_types = 3,
                                .edge_types = 3,
                                .edge_prob = 0.2,
                                .parallel_prob = 0.3,
                                .seed = 17});
  const BiasParams params(1.5, 0.75, SwitchModel::uniform(0.8),
                          SwitchModel::uniform(1.25));
  const auto states = all_states(rg.graph);
  SplitMix64 pick(7);
  for (int trial = 0; trial < 3; ++trial) {
    const auto& state = states[pick.next_below(states.size())];
    const auto dist = transition_distribution(rg.graph, params, state);
    std::map<std::pair<NodeId, EdgeTypeId>, std::size_t> index;
    std::vector<double> probs;
    for (const auto& t : dist) {
      const auto key = std::make_pair(t.node, t.etype);
      if (index.count(key) == 0) {
        index[key] = probs.size();
        probs.push_back(t.prob);
      } else {
        probs[index[key]] += t.prob;
      }
    }
    std::vector<std::uint64_t> observed(probs.size(), 0);
    SplitMix64 rng = SplitMix64::for_stream(1234, trial, 0);
    const std::uint64_t samples = 100000;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const auto next = sample_next(rg.graph, params, state, rng);
      observed[index.at({next->current, next->arrival_etype})]++;
    }
    const auto gof = hetn2v::testing::chi_square_gof(observed, probs, samples);
    CHECK(gof.p_value > 0.001);
    CHECK(gof.total_variation < 0.02);
  }
}

TEST_CASE("same seed reproduces the same draw sequence") {
  const auto rg = random_graph({.nodes = 12, .edge_prob = 0.3, .seed = 2});
  const BiasParams params(2.0, 2.0);
  const auto states = all_states(rg.graph);
  SplitMix64 r1 = SplitMix64::for_stream(9, 1, 2);
  SplitMix64 r2 = SplitMix64::for_stream(9, 1, 2);
  for (int i = 0; i < 200; ++i) {
    const auto a = sample_next(rg.graph, params, states[i % states.size()], r1);
    const auto b = sample_next(rg.graph, params, states[i % states.size()], r2);
    REQUIRE(a.has_value());
    CHECK(*a == *b);
  }
}

TEST_CASE("first step is weight-proportional and parameter independent") {
  GraphBuilder b;
  b.add_edge("s", "x", "t0", 1.0);
  b.add_edge("s", "y", "t1", 3.0);
  b.set_node_type("y", "other");
  const auto g = b.build();
  const NodeId s = *g.node_vocab().find("s");
  const NodeId y = *g.node_vocab().find("y");

  SplitMix64 rng = SplitMix64::for_stream(5, 0, 0);
  std::uint64_t hits = 0;
  const std::uint64_t samples = 200000;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto st = first_step(g, BiasParams(), s, rng);
    REQUIRE(st.has_value());
    CHECK(st->prev == s);
    if (st->current == y) ++hits;
  }
  CHECK(static_cast<double>(hits) / static_cast<double>(samples) ==
        doctest::Approx(0.75).epsilon(0.01));

  // wildly different parameters, same stream: identical draws
  const BiasParams skewed(0.01, 100.0, SwitchModel::uniform(0.01),
                          SwitchModel::uniform(100.0));
  SplitMix64 ra = SplitMix64::for_stream(8, 0, 0);
  SplitMix64 rb = SplitMix64::for_stream(8, 0, 0);
  for (int i = 0; i < 100; ++i) {
    const auto plain = first_step(g, BiasParams(), s, ra);
    const auto biased = first_step(g, skewed, s, rb);
    CHECK(*plain == *biased);
  }
}

TEST_CASE("generate_walks shapes and degenerate cases") {
  const auto g = testing::triangle();
  const auto corpus =
      generate_walks(g, BiasParams(), {.walk_length = 1, .walks_per_node = 3, .seed = 4});
  REQUIRE(corpus.walks.size() == 9);
  for (std::size_t w = 0; w < corpus.walks.size(); ++w) {
    REQUIRE(corpus.walks[w].nodes.size() == 1);
    CHECK(corpus.walks[w].nodes[0] == static_cast<NodeId>(w / 3));
  }

  GraphBuilder pb;
  pb.add_edge("a", "b", "t");
  const auto pair_graph = pb.build();
  const auto walks = generate_walks(pair_graph, BiasParams(),
                                    {.walk_length = 5, .walks_per_node = 1, .seed = 4});
  const NodeId a = *pair_graph.node_vocab().find("a");
  const NodeId b = *pair_graph.node_vocab().find("b");
  CHECK(walks.walks[0].nodes == std::vector<NodeId>{a, b, a, b, a});
  CHECK(walks.walks[1].nodes == std::vector<NodeId>{b, a, b, a, b});

  GraphBuilder ib;
  ib.add_node("alone");
  ib.add_edge("a", "b", "t");
  const auto ig = ib.build();
  const auto icorpus =
      generate_walks(ig, BiasParams(), {.walk_length = 6, .walks_per_node = 2, .seed = 4});
  const NodeId alone = *ig.node_vocab().find("alone");
  CHECK(icorpus.walks[alone * 2].nodes == std::vector<NodeId>{alone});
  CHECK(icorpus.walks[alone * 2 + 1].nodes == std::vector<NodeId>{alone});
}

TEST_CASE("corpus is identical for any thread count and stable per stream") {
  const auto rg = random_graph({.nodes = 25,
                                .node_types = 2,
                                .edge_types = 2,
                                .edge_prob = 0.2,
                                .parallel_prob = 0.2,
                                .seed = 31});
  const BiasParams params(0.5, 2.0, SwitchModel::uniform(0.5));
  WalkConfig cfg{.walk_length = 20, .walks_per_node = 4, .seed = 77, .threads = 1};
  const auto base = generate_walks(rg.graph, params, cfg);
  for (std::uint32_t threads : {2u, 4u, 8u}) {
    cfg.threads = threads;
    const auto other = generate_walks(rg.graph, params, cfg);
    REQUIRE(other.walks.size() == base.walks.size());
    for (std::size_t i = 0; i < base.walks.size(); ++i) {
      CHECK(other.walks[i].nodes == base.walks[i].nodes);
      CHECK(other.walks[i].edge_types == base.walks[i].edge_types);
    }
  }

  // streams are keyed by (seed, start, replicate), not by walks_per_node
  cfg.threads = 1;
  cfg.walks_per_node = 2;
  const auto fewer = generate_walks(rg.graph, params, cfg);
  for (NodeId v = 0; v < rg.graph.node_count(); ++v)
    for (std::uint32_t j = 0; j < 2; ++j)
      CHECK(fewer.walks[v * 2 + j].nodes == base.walks[v * 4 + j].nodes);
}

TEST_CASE("walk config validation") {
  const auto g = testing::triangle();
  CHECK_THROWS_AS(generate_walks(g, BiasParams(), {.walk_length = 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_walks(g, BiasParams(), {.walks_per_node = 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      generate_walks(g, BiasParams(), {.walk_length = 2, .walks_per_node = 1, .seed = 1, .threads = 0}),
      std::invalid_argument);
}

TEST_CASE("walk_stats on a single-type graph reports zero node switching") {
  const auto g = testing::triangle();
  const auto corpus =
      generate_walks(g, BiasParams(), {.walk_length = 30, .walks_per_node = 5, .seed = 6});
  const auto stats = walk_stats(corpus, g);
  CHECK(stats.node_switch_rate == 0.0);
  CHECK(stats.walk_count == corpus.walks.size());
  double node_sum = 0.0;
  for (const double f : stats.node_type_visit_fraction) node_sum += f;
  CHECK(node_sum == doctest::Approx(1.0).epsilon(1e-12));
  double edge_sum = 0.0;
  for (const double f : stats.edge_type_traversal_fraction) edge_sum += f;
  CHECK(edge_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("small s pulls visits toward the rarer node type") {
  const auto rg = random_graph({.nodes = 40,
                                .node_types = 2,
                                .edge_types = 1,
                                .edge_prob = 0.15,
                                .seed = 13});
  const auto& g = rg.graph;
  // identify the rarer type
  std::vector<std::size_t> per_type(g.node_type_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) per_type[g.node_type(v)]++;
  NodeTypeId rare = 0;
  for (NodeTypeId t = 0; t < per_type.size(); ++t)
    if (per_type[t] > 0 && per_type[t] <= per_type[rare]) rare = t;

  const WalkConfig cfg{.walk_length = 40, .walks_per_node = 5, .seed = 19};
  const auto at_one = walk_stats(generate_walks(g, BiasParams(), cfg), g);
  const auto near_zero = walk_stats(
      generate_walks(g, BiasParams(1.0, 1.0, SwitchModel::uniform(0.01)), cfg), g);
  CHECK(near_zero.node_type_visit_fraction[rare] >
        at_one.node_type_visit_fraction[rare]);
}

TEST_CASE("stats attribute parallel-edge steps by weight when no trace exists") {
  GraphBuilder b;
  b.add_edge("a", "b", "heavy", 3.0);
  b.add_edge("a", "b", "light", 1.0);
  const auto g = b.build();
  WalkCorpus corpus;
  corpus.node_names = g.node_vocab().names();
  corpus.has_edge_trace = false;
  corpus.walks.push_back({{*g.node_vocab().find("a"), *g.node_vocab().find("b")}, {}});
  const auto stats = walk_stats(corpus, g);
  CHECK(stats.edge_type_traversal_fraction[*g.edge_type_vocab().find("heavy")] ==
        doctest::Approx(0.75));
  CHECK(stats.edge_type_traversal_fraction[*g.edge_type_vocab().find("light")] ==
        doctest::Approx(0.25));

  // with a trace the attribution is exact
  WalkCorpus traced;
  traced.node_names = g.node_vocab().names();
  traced.walks.push_back({{*g.node_vocab().find("a"), *g.node_vocab().find("b")},
                          {*g.edge_type_vocab().find("light")}});
  const auto exact = walk_stats(traced, g);
  CHECK(exact.edge_type_traversal_fraction[*g.edge_type_vocab().find("light")] == 1.0);
}

TEST_CASE("walk_stats rejects corpora that mention unknown nodes") {
  const auto g = testing::triangle();
  WalkCorpus corpus;
  corpus.node_names = {"a", "nonexistent"};
  corpus.has_edge_trace = false;
  corpus.walks.push_back({{0, 1}, {}});
  CHECK_THROWS_AS(walk_stats(corpus, g), ValidationError);
}

TEST_CASE("canonicalize_corpus reindexes by first appearance") {
  WalkCorpus corpus;
  corpus.node_names = {"a", "b", "c"};
  corpus.has_edge_trace = false;
  corpus.walks.push_back({{2, 0, 2}, {}});
  corpus.walks.push_back({{1, 0}, {}});
  const auto canon = canonicalize_corpus(corpus);
  CHECK(canon.node_names == std::vector<std::string>{"c", "a", "b"});
  CHECK(canon.walks[0].nodes == std::vector<NodeId>{0, 1, 0});
  CHECK(canon.walks[1].nodes == std::vector<NodeId>{2, 1});
}
