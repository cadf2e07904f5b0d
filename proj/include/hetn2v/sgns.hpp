#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hetn2v/walk.hpp"

namespace hetn2v {

struct SgnsConfig {
  std::uint32_t dims = 128;
  std::uint32_t window = 10;
  std::uint32_t negatives = 5;
  std::uint32_t epochs = 5;
  double initial_lr = 0.025;
  double min_lr = 1e-4;
  std::uint64_t seed = 1;
  std::uint32_t threads = 1;   // > 1 updates shared rows without locks
  bool dynamic_window = true;  // false pins the radius, for deterministic runs
};

// Trained vectors, row-major names.size() x dims. `input` rows are the
// published embedding; `output` rows are the context side of the objective.
struct EmbeddingMatrix {
  std::vector<std::string> names;
  std::size_t dims = 0;
  std::vector<double> input;
  std::vector<double> output;

  std::span<const double> input_row(std::size_t i) const {
    return {input.data() + i * dims, dims};
  }
  std::span<double> input_row(std::size_t i) { return {input.data() + i * dims, dims}; }
  std::span<const double> output_row(std::size_t i) const {
    return {output.data() + i * dims, dims};
  }
  std::span<double> output_row(std::size_t i) { return {output.data() + i * dims, dims}; }
};

struct SgnsVocab {
  std::vector<std::uint64_t> counts;  // occurrences per corpus node id
  std::vector<double> negative_cdf;   // cumulative mass proportional to count^0.75
  std::uint64_t total_tokens = 0;
};

SgnsVocab build_vocab(const WalkCorpus& corpus);

// Loss of one (center, positive, negatives) sample:
//   -log sigmoid(center . positive) - sum_n log sigmoid(-center . negative_n)
double sgns_sample_loss(std::span<const double> center, std::span<const double> positive,
                        const std::vector<std::span<const double>>& negatives);

// Analytic gradients of sgns_sample_loss with respect to every vector
// involved. grad_negatives[n] must have the same length as center.
void sgns_sample_gradients(std::span<const double> center,
                           std::span<const double> positive,
                           const std::vector<std::span<const double>>& negatives,
                           std::span<double> grad_center, std::span<double> grad_positive,
                           std::vector<std::span<double>>& grad_negatives);

// Skip-gram with negative sampling over the corpus. Input rows start uniform
// in [-0.5/dims, 0.5/dims], output rows at zero; learning rate decays
// linearly from initial_lr to min_lr over all epochs. Single-threaded runs
// are reproducible from the seed. epoch_mean_loss, when given, receives the
// mean per-pair loss of each epoch.
EmbeddingMatrix train(const WalkCorpus& corpus, const SgnsConfig& cfg,
                      std::vector<double>* epoch_mean_loss = nullptr);

struct Neighbor {
  NodeId node;
  double similarity;
};

// top_k rows ranked by cosine similarity to v's input vector, excluding v.
// A zero vector on either side scores 0.
std::vector<Neighbor> cosine_neighbors(const EmbeddingMatrix& m, NodeId v,
                                       std::size_t top_k);

}  // namespace hetn2v
