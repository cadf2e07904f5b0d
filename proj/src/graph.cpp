#include "hetn2v/graph.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "hetn2v/error.hpp"

namespace hetn2v {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// Walk files separate names with spaces and the TSV formats with tabs, so
// names must stay whitespace-free to round-trip.
void check_name(std::string_view name, const char* what) {
  if (name.empty())
    throw ValidationError(std::string(what) + " name must be non-empty");
  if (has_whitespace(name))
    throw ValidationError(std::string(what) + " name '" + std::string(name) +
                          "' must not contain whitespace");
}

}  // namespace

std::uint32_t Vocabulary::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::name(std::uint32_t id) const {
  if (id >= names_.size()) throw std::out_of_range("vocabulary id out of range");
  return names_[id];
}

NodeTypeId HetMultigraph::node_type(NodeId v) const {
  check_node(v);
  return node_types_[v];
}

std::size_t HetMultigraph::degree(NodeId v) const {
  check_node(v);
  return offsets_[v + 1] - offsets_[v];
}

std::span<const EdgeInstance> HetMultigraph::neighbors(NodeId v) const {
  check_node(v);
  return {adjacency_.data() + offsets_[v],
          static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
}

bool HetMultigraph::is_adjacent(NodeId u, NodeId x) const {
  check_node(u);
  check_node(x);
  // Search the smaller slice; entries are sorted by endpoint first.
  if (degree(x) < degree(u)) std::swap(u, x);
  const auto adj = neighbors(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), x,
                             [](const EdgeInstance& e, NodeId t) { return e.endpoint < t; });
  return it != adj.end() && it->endpoint == x;
}

int HetMultigraph::distance_class(NodeId r, NodeId x) const {
  if (x == r) {
    check_node(x);
    return 0;
  }
  return is_adjacent(r, x) ? 1 : 2;
}

void HetMultigraph::check_node(NodeId v) const {
  if (v >= node_types_.size())
    throw std::out_of_range("invalid node id " + std::to_string(v));
}

GraphBuilder::GraphBuilder() { node_type_vocab_.intern(kDefaultNodeTypeName); }

NodeId GraphBuilder::add_node(std::string_view name) {
  check_name(name, "node");
  const NodeId id = node_vocab_.intern(name);
  if (id == node_types_.size()) node_types_.push_back(kDefaultNodeType);
  return id;
}

bool GraphBuilder::has_node(std::string_view name) const {
  return node_vocab_.find(name).has_value();
}

void GraphBuilder::set_node_type(std::string_view node, std::string_view type) {
  check_name(type, "node type");
  const auto id = node_vocab_.find(node);
  if (!id)
    throw ValidationError("unknown node '" + std::string(node) + "' in type assignment");
  node_types_[*id] = node_type_vocab_.intern(type);
}

void GraphBuilder::add_edge(std::string_view u, std::string_view v,
                            std::string_view etype, double weight) {
  check_name(etype, "edge type");
  if (!(weight > 0.0))
    throw ValidationError("edge weight must be positive, got " + std::to_string(weight));
  NodeId a = add_node(u);
  NodeId b = add_node(v);
  const EdgeTypeId t = edge_type_vocab_.intern(etype);
  if (a > b) std::swap(a, b);
  merged_[{a, b, t}] += weight;
}

HetMultigraph GraphBuilder::build() {
  HetMultigraph g;
  const std::size_t n = node_types_.size();
  g.node_types_ = std::move(node_types_);
  g.node_vocab_ = std::move(node_vocab_);
  g.node_type_vocab_ = std::move(node_type_vocab_);
  g.edge_type_vocab_ = std::move(edge_type_vocab_);
  g.instance_count_ = merged_.size();

  std::vector<std::uint64_t> deg(n, 0);
  for (const auto& [key, w] : merged_) {
    (void)w;
    deg[std::get<0>(key)]++;
    deg[std::get<1>(key)]++;  // self-loop: both slots land on the same node
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adjacency_.resize(g.offsets_[n]);

  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [key, w] : merged_) {
    const auto [a, b, t] = key;
    g.adjacency_[cursor[a]++] = {b, t, w};
    g.adjacency_[cursor[b]++] = {a, t, w};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const EdgeInstance& l, const EdgeInstance& r) {
                return std::tie(l.endpoint, l.etype) < std::tie(r.endpoint, r.etype);
              });
  }
  merged_.clear();
  return g;
}

}  // namespace hetn2v
