#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetn2v/graph.hpp"

namespace hetn2v {

// Re-weighting applied to a move that crosses between two type labels.
// Stored values are reciprocals of the switching parameters, so factor() is
// a plain lookup inside the sampling loop. Same-type moves always take
// factor 1. One model serves node types, another edge types.
class SwitchModel {
 public:
  enum class Kind { Uniform, PairwiseSymmetric, PairwiseDirected, SpecialSet };

  // Uniform with parameter 1: no type bias at all.
  SwitchModel() = default;

  static SwitchModel uniform(double s);

  // s is a row-major type_count x type_count parameter matrix. The symmetric
  // variant rejects s[i][j] != s[j][i]; the diagonal is ignored (same-type
  // moves take factor 1 regardless).
  static SwitchModel pairwise_symmetric(std::size_t type_count, std::vector<double> s);
  static SwitchModel pairwise_directed(std::size_t type_count, std::vector<double> s);

  // Two-group model: crossing into the special set divides by s_to_special,
  // leaving it divides by s_from_special. Moves inside either group take
  // factor 1 even when the concrete types differ.
  static SwitchModel special_set(std::vector<bool> special, double s_to_special,
                                 double s_from_special);

  // Rows `from<TAB>to<TAB>value`; unlisted pairs keep parameter 1. Type names
  // resolve against `types`. Always builds a pairwise-directed model.
  static SwitchModel from_tsv(const std::string& path, const Vocabulary& types);

  double factor(std::uint32_t from, std::uint32_t to) const {
    if (from == to) return 1.0;
    switch (kind_) {
      case Kind::Uniform:
        return inv_uniform_;
      case Kind::PairwiseSymmetric:
      case Kind::PairwiseDirected:
        return inv_pair_[from * type_count_ + to];
      case Kind::SpecialSet: {
        const bool f = special_[from];
        const bool t = special_[to];
        if (f == t) return 1.0;
        return t ? inv_to_special_ : inv_from_special_;
      }
    }
    return 1.0;
  }

  Kind kind() const { return kind_; }
  bool is_identity() const;

 private:
  Kind kind_ = Kind::Uniform;
  double inv_uniform_ = 1.0;
  std::size_t type_count_ = 0;
  std::vector<double> inv_pair_;  // type_count x type_count reciprocals
  std::vector<bool> special_;
  double inv_to_special_ = 1.0;
  double inv_from_special_ = 1.0;
};

inline double node_switch_factor(const SwitchModel& m, NodeTypeId from, NodeTypeId to) {
  return m.factor(from, to);
}

inline double edge_switch_factor(const SwitchModel& m, EdgeTypeId arrived,
                                 EdgeTypeId departing) {
  return m.factor(arrived, departing);
}

// Walk bias: return parameter p, in-out parameter q, plus the node and edge
// switching models. Reciprocals of p and q are precomputed.
class BiasParams {
 public:
  BiasParams() : BiasParams(1.0, 1.0) {}
  BiasParams(double p, double q, SwitchModel node_switch = {},
             SwitchModel edge_switch = {});

  double p() const { return p_; }
  double q() const { return q_; }
  const SwitchModel& node_switch() const { return node_switch_; }
  const SwitchModel& edge_switch() const { return edge_switch_; }

  // 1/p for a return move, 1 for distance 1, 1/q for distance 2.
  double base(int d) const { return d == 0 ? inv_p_ : (d == 1 ? 1.0 : inv_q_); }

 private:
  double p_ = 1.0;
  double q_ = 1.0;
  double inv_p_ = 1.0;
  double inv_q_ = 1.0;
  SwitchModel node_switch_;
  SwitchModel edge_switch_;
};

// Unnormalized transition kernel for one candidate step: the distance base
// times the node- and edge-switch factors. Multiplying by the edge weight
// gives the unnormalized transition probability.
inline double gamma(const BiasParams& params, int d, NodeTypeId node_from,
                    NodeTypeId node_to, EdgeTypeId edge_arrived,
                    EdgeTypeId edge_departing) {
  return params.base(d) * params.node_switch().factor(node_from, node_to) *
         params.edge_switch().factor(edge_arrived, edge_departing);
}

}  // namespace hetn2v
