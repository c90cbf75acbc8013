#pragma once

// Internal: the SGNS kernel and the epoch/shard driver shared by the syllable
// trainer and the word-level baseline. The two models must consume identical
// pair-generation and negative-sampling streams under the same seed, so all
// stream handling lives here and the center representation is a template
// parameter.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <span>
#include <thread>
#include <vector>

#include "sylvec/config.hpp"
#include "sylvec/hangul.hpp"
#include "sylvec/rng.hpp"
#include "sylvec/trainer.hpp"

namespace sylvec::detail {

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + e^x), overflow-safe. -log sigma(x) == softplus(-x).
inline double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Stream salts; each (purpose, shard) pair gets an independent substream.
enum StreamPurpose : std::uint64_t {
  kPairStream = 1,
  kNegativeStream = 2,
  kSubsampleStream = 3,
};

inline std::uint64_t stream_seed(std::uint64_t seed, StreamPurpose purpose, int shard) {
  return mix_seed(mix_seed(seed, purpose), static_cast<std::uint64_t>(shard));
}

struct SgnsScratch {
  std::vector<WordId> sample_ids;  // context first, then negatives
  std::vector<double> coeffs;      // sigma(score) - label
  std::vector<double> upstream;    // dL/d(center vector)
  std::vector<WordId> negatives;
};

// Loss plus per-sample coefficients and upstream, all against the pre-update
// output columns. Nothing is written.
inline double sgns_output_pass(std::span<const double> y, WordId context,
                               std::span<const WordId> negatives, const EmbeddingTable& output,
                               SgnsScratch& s) {
  const int dim = output.dim;
  s.sample_ids.clear();
  s.coeffs.clear();
  s.upstream.assign(dim, 0.0);

  double loss = 0.0;
  auto add_sample = [&](WordId id, double label) {
    const float* col = output.values.data() + static_cast<std::size_t>(id) * dim;
    double score = 0.0;
    for (int r = 0; r < dim; ++r) score += y[r] * col[r];
    loss += label > 0.0 ? softplus(-score) : softplus(score);
    const double coeff = sigmoid(score) - label;
    for (int r = 0; r < dim; ++r) s.upstream[r] += coeff * col[r];
    s.sample_ids.push_back(id);
    s.coeffs.push_back(coeff);
  };
  add_sample(context, 1.0);
  for (WordId n : negatives) add_sample(n, 0.0);
  return loss;
}

inline void sgns_apply_output(EmbeddingTable& output, const SgnsScratch& s,
                              std::span<const double> y, double lr) {
  const int dim = output.dim;
  for (std::size_t j = 0; j < s.sample_ids.size(); ++j) {
    float* col = output.values.data() + static_cast<std::size_t>(s.sample_ids[j]) * dim;
    const double step = lr * s.coeffs[j];
    for (int r = 0; r < dim; ++r) col[r] = static_cast<float>(col[r] - step * y[r]);
  }
}

// Corpus lines as in-vocabulary word ids; tokens below min_count are removed
// here, before pair windows are formed.
std::vector<std::vector<WordId>> load_corpus_ids(const std::string& corpus_path,
                                                 const Vocabulary& vocab, bool lowercase);

// Runs one epoch over a range of lines, calling step(center, context) for
// every skip-gram pair. The exact same code path is used to pre-count pairs,
// which keeps the random streams of the counting and training passes aligned.
template <typename StepFn>
void for_each_pair_in_lines(std::span<const std::vector<WordId>> lines, const TrainConfig& cfg,
                            const Vocabulary& vocab, Rng& pair_rng, Rng& sub_rng,
                            std::vector<WordId>& kept_scratch,
                            std::vector<std::pair<WordId, WordId>>& pairs_scratch,
                            StepFn&& step) {
  const bool subsampling = cfg.subsample > 0.0;
  for (const auto& line : lines) {
    const std::vector<WordId>* ids = &line;
    if (subsampling) {
      kept_scratch.clear();
      for (WordId wid : line) {
        const double freq =
            static_cast<double>(vocab.counts[wid]) / static_cast<double>(vocab.total_tokens);
        const double keep =
            (std::sqrt(freq / cfg.subsample) + 1.0) * (cfg.subsample / freq);
        if (sub_rng.next_double() < keep) kept_scratch.push_back(wid);
      }
      ids = &kept_scratch;
    }
    generate_pairs(*ids, cfg.window, cfg.dynamic_window, pair_rng, pairs_scratch);
    for (const auto& [center, context] : pairs_scratch) step(center, context);
  }
}

struct ShardRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline std::vector<ShardRange> shard_lines(std::size_t n_lines, int threads) {
  const int n = std::max(threads, 1);
  std::vector<ShardRange> shards;
  shards.reserve(n);
  for (int s = 0; s < n; ++s) {
    shards.push_back({n_lines * s / n, n_lines * (s + 1) / n});
  }
  return shards;
}

// Exact total pair count over all epochs and shards, by replaying the pair
// and subsample streams from their canonical seeds. Needed up front because
// the learning rate decays linearly in processed pairs.
std::uint64_t count_total_pairs(const std::vector<std::vector<WordId>>& lines,
                                const Vocabulary& vocab, const TrainConfig& cfg, int threads);

// CenterModel concept: dim(), forward(WordId) -> span<const double>,
// backward(WordId, upstream, lr). Copies share parameters but own scratch.
template <typename CenterModel>
void run_training(const std::vector<std::vector<WordId>>& lines, const Vocabulary& vocab,
                  const TrainConfig& cfg, const CenterModel& center_proto,
                  EmbeddingTable& output, const TrainOptions& options,
                  std::vector<double>& epoch_mean_loss, std::vector<std::uint64_t>& epoch_pairs) {
  const int threads = std::max(options.threads, 1);
  const std::uint64_t total_steps = count_total_pairs(lines, vocab, cfg, threads);

  struct Shard {
    std::span<const std::vector<WordId>> lines;
    Rng pair_rng;
    Rng sub_rng;
    NegativeSampler sampler;
    CenterModel center;
    SgnsScratch scratch;
    std::vector<WordId> kept_scratch;
    std::vector<std::pair<WordId, WordId>> pairs_scratch;
    double loss_sum = 0.0;
    std::uint64_t pairs = 0;
  };

  std::vector<Shard> shards;
  const auto ranges = shard_lines(lines.size(), threads);
  for (int s = 0; s < threads; ++s) {
    shards.push_back(Shard{
        std::span(lines).subspan(ranges[s].begin, ranges[s].end - ranges[s].begin),
        Rng(stream_seed(cfg.seed, kPairStream, s)),
        Rng(stream_seed(cfg.seed, kSubsampleStream, s)),
        NegativeSampler(vocab.counts, cfg.unigram_power,
                        stream_seed(cfg.seed, kNegativeStream, s)),
        center_proto,
        {}, {}, {}});
  }

  std::atomic<std::uint64_t> step_counter{0};
  epoch_mean_loss.assign(cfg.epochs, 0.0);
  epoch_pairs.assign(cfg.epochs, 0);

  auto run_shard_epoch = [&](Shard& shard) {
    shard.loss_sum = 0.0;
    shard.pairs = 0;
    for_each_pair_in_lines(
        shard.lines, cfg, vocab, shard.pair_rng, shard.sub_rng, shard.kept_scratch,
        shard.pairs_scratch, [&](WordId center, WordId context) {
          const std::uint64_t t = step_counter.fetch_add(1, std::memory_order_relaxed);
          const double lr = scheduled_lr(cfg, t, total_steps);
          shard.sampler.draw_into(cfg.negatives, context, shard.scratch.negatives);
          const auto y = shard.center.forward(center);
          const double loss =
              sgns_output_pass(y, context, shard.scratch.negatives, output, shard.scratch);
          sgns_apply_output(output, shard.scratch, y, lr);
          shard.center.backward(center, shard.scratch.upstream, lr);
          shard.loss_sum += loss;
          shard.pairs += 1;
        });
  };

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    if (threads == 1) {
      run_shard_epoch(shards[0]);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(threads);
      for (auto& shard : shards) workers.emplace_back([&] { run_shard_epoch(shard); });
      for (auto& w : workers) w.join();
    }
    double loss_sum = 0.0;
    std::uint64_t pairs = 0;
    for (const auto& shard : shards) {
      loss_sum += shard.loss_sum;
      pairs += shard.pairs;
    }
    epoch_pairs[epoch] = pairs;
    epoch_mean_loss[epoch] = pairs > 0 ? loss_sum / static_cast<double>(pairs) : 0.0;
    if (options.progress) {
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      std::fprintf(stderr, "epoch %d/%d  pairs %llu  pairs/s %.0f  mean loss %.4f\n",
                   epoch + 1, cfg.epochs, static_cast<unsigned long long>(pairs),
                   seconds > 0 ? static_cast<double>(pairs) / seconds : 0.0,
                   epoch_mean_loss[epoch]);
    }
  }
}

}  // namespace sylvec::detail
