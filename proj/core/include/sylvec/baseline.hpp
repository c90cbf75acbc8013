#pragma once

#include <string>
#include <vector>

#include "sylvec/trainer.hpp"

namespace sylvec {

// Word-level skip-gram with negative sampling: the comparison system. Shares
// the trainer machinery (pair generation, negative sampling, schedule, seeds)
// with the syllable model; only the center representation differs.
struct BaselineModel {
  Vocabulary vocab;
  EmbeddingTable input;   // h x |V|, the word vectors
  EmbeddingTable output;  // h x |V|, SGNS context side
  TrainConfig config;
};

struct BaselineTrainResult {
  BaselineModel model;
  std::vector<double> epoch_mean_loss;
  std::vector<std::uint64_t> epoch_pairs;
};

// Identical pipeline to train(), with the center vector read from the input
// table instead of composed. Input table initialized uniformly in
// [-0.5/h, 0.5/h]; output table starts at zero.
BaselineTrainResult train_baseline(const std::string& corpus_path, const TrainConfig& config,
                                   const TrainOptions& options = {});

// Input-table column for in-vocabulary words. A word-level model cannot
// compose anything else: out-of-vocabulary queries throw NoRepresentationError.
std::vector<float> baseline_vector(const BaselineModel& model, std::string_view word);
std::vector<double> word_vector(const BaselineModel& model, std::string_view word);

// Analytic gradients of one baseline SGNS sample set (center column gradient
// is the upstream itself). For verification; nothing is applied.
struct BaselineSgnsGradients {
  double loss = 0.0;
  std::vector<double> center_grad;
  std::vector<WordId> output_ids;
  std::vector<double> output_grads;
};
BaselineSgnsGradients baseline_sgns_gradients(const BaselineModel& model, WordId center,
                                              WordId context,
                                              std::span<const WordId> negatives);

}  // namespace sylvec
