#include "hetn2v/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hetn2v {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

constexpr double kLossFloor = 1e-12;  // clamp inside log for saturated pairs

void validate(const SgnsConfig& cfg) {
  if (cfg.dims < 1) throw std::invalid_argument("dims must be >= 1");
  if (cfg.window < 1) throw std::invalid_argument("window must be >= 1");
  if (!(cfg.initial_lr > 0.0)) throw std::invalid_argument("initial_lr must be positive");
  if (cfg.min_lr < 0.0) throw std::invalid_argument("min_lr must be non-negative");
  if (cfg.min_lr > cfg.initial_lr)
    throw std::invalid_argument("min_lr must not exceed initial_lr");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
}

// Binary search over the cumulative unigram^0.75 table; returns the corpus
// node id, or UINT32_MAX when the draw keeps hitting `skip`.
NodeId draw_negative(const SgnsVocab& vocab, NodeId skip, SplitMix64& rng) {
  const double total = vocab.negative_cdf.back();
  for (int attempt = 0; attempt < 16; ++attempt) {
    const double u = rng.next_double() * total;
    const auto it =
        std::upper_bound(vocab.negative_cdf.begin(), vocab.negative_cdf.end(), u);
    auto id = static_cast<NodeId>(it - vocab.negative_cdf.begin());
    if (id >= vocab.negative_cdf.size())
      id = static_cast<NodeId>(vocab.negative_cdf.size() - 1);
    if (id != skip) return id;
  }
  return UINT32_MAX;
}

}  // namespace

SgnsVocab build_vocab(const WalkCorpus& corpus) {
  SgnsVocab vocab;
  vocab.counts.assign(corpus.node_names.size(), 0);
  for (const Walk& walk : corpus.walks) {
    for (const NodeId v : walk.nodes) {
      vocab.counts[v]++;
      vocab.total_tokens++;
    }
  }
  if (vocab.total_tokens == 0) throw std::invalid_argument("corpus is empty");
  vocab.negative_cdf.resize(vocab.counts.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < vocab.counts.size(); ++i) {
    cum += std::pow(static_cast<double>(vocab.counts[i]), 0.75);
    vocab.negative_cdf[i] = cum;
  }
  return vocab;
}

double sgns_sample_loss(std::span<const double> center, std::span<const double> positive,
                        const std::vector<std::span<const double>>& negatives) {
  double loss = -std::log(std::max(sigmoid(dot(center, positive)), kLossFloor));
  for (const auto& neg : negatives)
    loss -= std::log(std::max(sigmoid(-dot(center, neg)), kLossFloor));
  return loss;
}

void sgns_sample_gradients(std::span<const double> center,
                           std::span<const double> positive,
                           const std::vector<std::span<const double>>& negatives,
                           std::span<double> grad_center, std::span<double> grad_positive,
                           std::vector<std::span<double>>& grad_negatives) {
  const std::size_t dims = center.size();
  const double gp = sigmoid(dot(center, positive)) - 1.0;
  for (std::size_t i = 0; i < dims; ++i) {
    grad_center[i] = gp * positive[i];
    grad_positive[i] = gp * center[i];
  }
  for (std::size_t n = 0; n < negatives.size(); ++n) {
    const double gn = sigmoid(dot(center, negatives[n]));
    for (std::size_t i = 0; i < dims; ++i) {
      grad_center[i] += gn * negatives[n][i];
      grad_negatives[n][i] = gn * center[i];
    }
  }
}

EmbeddingMatrix train(const WalkCorpus& corpus, const SgnsConfig& cfg,
                      std::vector<double>* epoch_mean_loss) {
  validate(cfg);
  const SgnsVocab vocab = build_vocab(corpus);
  const std::size_t n = corpus.node_names.size();
  const std::size_t dims = cfg.dims;

  EmbeddingMatrix m;
  m.names = corpus.node_names;
  m.dims = dims;
  m.input.resize(n * dims);
  m.output.assign(n * dims, 0.0);
  {
    SplitMix64 init_rng = SplitMix64::for_stream(cfg.seed, 0x696e6974ull, 0);
    for (double& v : m.input)
      v = (init_rng.next_double() - 0.5) / static_cast<double>(dims);
  }
  if (epoch_mean_loss) epoch_mean_loss->clear();
  if (cfg.epochs == 0) return m;

  const std::uint64_t total_positions =
      vocab.total_tokens * static_cast<std::uint64_t>(cfg.epochs);
  std::atomic<std::uint64_t> processed{0};
  const double lr_span = cfg.initial_lr - cfg.min_lr;

  const std::uint32_t nthreads = std::max<std::uint32_t>(
      1, std::min<std::uint32_t>(cfg.threads,
                                 static_cast<std::uint32_t>(
                                     std::max<std::size_t>(1, corpus.walks.size()))));

  std::vector<double> thread_loss(nthreads, 0.0);
  std::vector<std::uint64_t> thread_pairs(nthreads, 0);

  auto worker = [&](std::uint32_t epoch, std::uint32_t tid, std::size_t wlo,
                    std::size_t whi) {
    SplitMix64 rng = SplitMix64::for_stream(
        cfg.seed, 0x736774ull, (static_cast<std::uint64_t>(epoch) << 32) | tid);
    std::vector<double> neu1e(dims);
    double loss = 0.0;
    std::uint64_t pairs = 0;
    double lr = cfg.initial_lr;

    for (std::size_t w = wlo; w < whi; ++w) {
      const auto& nodes = corpus.walks[w].nodes;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        // linear decay over all epochs, paced by the shared position counter
        const std::uint64_t done = processed.fetch_add(1, std::memory_order_relaxed);
        lr = cfg.initial_lr -
             lr_span * (static_cast<double>(done) / static_cast<double>(total_positions));
        if (lr < cfg.min_lr) lr = cfg.min_lr;

        const NodeId center = nodes[i];
        const std::size_t radius =
            cfg.dynamic_window ? 1 + static_cast<std::size_t>(rng.next_below(cfg.window))
                               : cfg.window;
        const std::size_t jlo = i >= radius ? i - radius : 0;
        const std::size_t jhi = std::min(nodes.size(), i + radius + 1);
        for (std::size_t j = jlo; j < jhi; ++j) {
          if (j == i) continue;
          const NodeId context = nodes[j];
          double* v = m.input.data() + static_cast<std::size_t>(center) * dims;
          std::fill(neu1e.begin(), neu1e.end(), 0.0);
          for (std::uint32_t d = 0; d <= cfg.negatives; ++d) {
            NodeId target;
            double label;
            if (d == 0) {
              target = context;
              label = 1.0;
            } else {
              target = draw_negative(vocab, context, rng);
              if (target == UINT32_MAX) continue;
              label = 0.0;
            }
            double* u = m.output.data() + static_cast<std::size_t>(target) * dims;
            double f = 0.0;
            for (std::size_t k = 0; k < dims; ++k) f += v[k] * u[k];
            const double sig = sigmoid(f);
            loss -= label == 1.0 ? std::log(std::max(sig, kLossFloor))
                                 : std::log(std::max(1.0 - sig, kLossFloor));
            const double g = (label - sig) * lr;
            for (std::size_t k = 0; k < dims; ++k) {
              neu1e[k] += g * u[k];
              u[k] += g * v[k];
            }
          }
          for (std::size_t k = 0; k < dims; ++k) v[k] += neu1e[k];
          ++pairs;
        }
      }
    }
    thread_loss[tid] += loss;
    thread_pairs[tid] += pairs;
  };

  for (std::uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::fill(thread_loss.begin(), thread_loss.end(), 0.0);
    std::fill(thread_pairs.begin(), thread_pairs.end(), 0);
    if (nthreads == 1) {
      worker(epoch, 0, 0, corpus.walks.size());
    } else {
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (std::uint32_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = corpus.walks.size() * t / nthreads;
        const std::size_t hi = corpus.walks.size() * (t + 1) / nthreads;
        pool.emplace_back(worker, epoch, t, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    if (epoch_mean_loss) {
      double loss = 0.0;
      std::uint64_t pairs = 0;
      for (std::uint32_t t = 0; t < nthreads; ++t) {
        loss += thread_loss[t];
        pairs += thread_pairs[t];
      }
      epoch_mean_loss->push_back(pairs > 0 ? loss / static_cast<double>(pairs) : 0.0);
    }
  }
  return m;
}

std::vector<Neighbor> cosine_neighbors(const EmbeddingMatrix& m, NodeId v,
                                       std::size_t top_k) {
  if (v >= m.names.size()) throw std::out_of_range("invalid node id");
  const auto ref = m.input_row(v);
  const double ref_norm = std::sqrt(dot(ref, ref));
  std::vector<Neighbor> scored;
  scored.reserve(m.names.size() - 1);
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    if (i == v) continue;
    const auto row = m.input_row(i);
    const double norm = std::sqrt(dot(row, row));
    const double sim =
        (ref_norm == 0.0 || norm == 0.0) ? 0.0 : dot(ref, row) / (ref_norm * norm);
    scored.push_back({static_cast<NodeId>(i), sim});
  }
  const std::size_t k = std::min(top_k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k),
                    scored.end(), [](const Neighbor& a, const Neighbor& b) {
                      return a.similarity > b.similarity ||
                             (a.similarity == b.similarity && a.node < b.node);
                    });
  scored.resize(k);
  return scored;
}

}  // namespace hetn2v
