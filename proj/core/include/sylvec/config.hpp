#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "sylvec/errors.hpp"

namespace sylvec {

// Hyperparameters shared by the syllable model and the word-level baseline.
// Defaults: 320-dim vectors, window 4, 7 negatives, 12 epochs, filter widths
// 1..4 with 80 filters each (so the composed representation is also 320-dim).
struct TrainConfig {
  int syllable_dim = 320;              // d, rows of Q and of every filter
  std::vector<int> widths = {1, 2, 3, 4};
  std::vector<int> filter_counts = {80, 80, 80, 80};  // one entry per width
  int window = 4;
  int negatives = 7;                   // k
  int epochs = 12;
  double initial_lr = 0.025;
  double min_lr = 1e-4;
  std::uint64_t min_count = 5;
  double unigram_power = 0.75;
  std::uint64_t seed = 1;
  bool dynamic_window = true;          // effective window uniform in 1..window
  bool lowercase = false;
  double subsample = 0.0;              // frequent-word subsampling threshold; 0 = off

  // h: total representation dimension. For the baseline this is the width of
  // both embedding tables.
  int repr_dim() const {
    return std::accumulate(filter_counts.begin(), filter_counts.end(), 0);
  }

  void validate() const {
    if (syllable_dim <= 0) throw ConfigError("syllable dimension must be positive");
    if (widths.empty()) throw ConfigError("at least one filter width is required");
    if (widths.size() != filter_counts.size())
      throw ConfigError("widths and filter counts must align");
    for (std::size_t i = 0; i < widths.size(); ++i) {
      if (widths[i] < 1) throw ConfigError("filter widths must be >= 1");
      if (i > 0 && widths[i] <= widths[i - 1])
        throw ConfigError("filter widths must be strictly ascending");
      if (filter_counts[i] <= 0) throw ConfigError("filter counts must be positive");
    }
    if (window <= 0) throw ConfigError("window must be positive");
    if (negatives <= 0) throw ConfigError("negative-sample count must be positive");
    if (epochs <= 0) throw ConfigError("epoch count must be positive");
    if (min_count == 0) throw ConfigError("min-count must be positive");
    if (!(initial_lr > 0) || !(min_lr > 0))
      throw ConfigError("learning rates must be positive");
    if (!(min_lr < initial_lr))
      throw ConfigError("min learning rate must be below the initial rate");
    if (subsample < 0) throw ConfigError("subsample threshold must be >= 0");
  }
};

}  // namespace sylvec
