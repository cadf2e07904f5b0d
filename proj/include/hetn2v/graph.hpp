#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace hetn2v {

using NodeId = std::uint32_t;
using NodeTypeId = std::uint32_t;
using EdgeTypeId = std::uint32_t;

// Type id every node gets when no explicit type was assigned. The node-type
// vocabulary reserves slot 0 for it.
inline constexpr NodeTypeId kDefaultNodeType = 0;
inline constexpr const char* kDefaultNodeTypeName = "default";

// Dense name <-> id table; ids follow first-appearance order.
class Vocabulary {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const;
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

// One stored half of an undirected typed edge. The mirror half lives in the
// endpoint's slice; a self-loop contributes both halves to the same slice.
struct EdgeInstance {
  NodeId endpoint;
  EdgeTypeId etype;
  double weight;

  friend bool operator==(const EdgeInstance&, const EdgeInstance&) = default;
};

// Undirected weighted multigraph with typed nodes and edges. Adjacency is
// one contiguous array cut into per-node slices sorted by (endpoint, etype),
// so neighbor iteration is a span walk and membership is a binary search.
// Immutable once built; shared freely across walker threads.
class HetMultigraph {
 public:
  std::size_t node_count() const { return node_types_.size(); }
  std::size_t node_type_count() const { return node_type_vocab_.size(); }
  std::size_t edge_type_count() const { return edge_type_vocab_.size(); }

  // Undirected edge instances; a self-loop counts once here but occupies two
  // adjacency slots.
  std::size_t instance_count() const { return instance_count_; }

  NodeTypeId node_type(NodeId v) const;
  std::size_t degree(NodeId v) const;
  std::span<const EdgeInstance> neighbors(NodeId v) const;

  // True iff at least one edge instance of any type joins u and x.
  bool is_adjacent(NodeId u, NodeId x) const;

  // Shortest-path class of candidate x relative to the previous node r:
  // 0 when x == r, 1 when x neighbors r, 2 otherwise.
  int distance_class(NodeId r, NodeId x) const;

  const Vocabulary& node_vocab() const { return node_vocab_; }
  const Vocabulary& node_type_vocab() const { return node_type_vocab_; }
  const Vocabulary& edge_type_vocab() const { return edge_type_vocab_; }

 private:
  friend class GraphBuilder;

  void check_node(NodeId v) const;

  std::vector<std::uint64_t> offsets_;   // node_count + 1 slice boundaries
  std::vector<EdgeInstance> adjacency_;  // 2 * instance_count entries
  std::vector<NodeTypeId> node_types_;
  std::size_t instance_count_ = 0;
  Vocabulary node_vocab_;
  Vocabulary node_type_vocab_;
  Vocabulary edge_type_vocab_;
};

// Collects typed edge records, then builds the compressed adjacency.
// Duplicate records with identical endpoints and edge type merge by summing
// weights; parallel edges of distinct types stay separate instances.
// Single-writer; the built graph is what gets shared.
class GraphBuilder {
 public:
  GraphBuilder();

  // Idempotent; new nodes start with the default type.
  NodeId add_node(std::string_view name);

  // Node must already exist.
  void set_node_type(std::string_view node, std::string_view type);

  void add_edge(std::string_view u, std::string_view v, std::string_view etype,
                double weight = 1.0);

  bool has_node(std::string_view name) const;

  HetMultigraph build();

 private:
  Vocabulary node_vocab_;
  Vocabulary node_type_vocab_;
  Vocabulary edge_type_vocab_;
  std::vector<NodeTypeId> node_types_;
  // (min endpoint, max endpoint, edge type) -> accumulated weight
  std::map<std::tuple<NodeId, NodeId, EdgeTypeId>, double> merged_;
};

}  // namespace hetn2v
