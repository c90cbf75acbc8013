#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sylvec/config.hpp"
#include "sylvec/hangul.hpp"

namespace sylvec {

// One convolution filter bank: `count` filters of shape d x width plus a
// scalar bias each. Filter j is stored as `width` contiguous d-columns at
// weights[(j * width + c) * d], matching how syllable slabs are gathered.
struct FilterBank {
  int width = 0;
  int count = 0;
  std::vector<float> weights;  // count * width * d
  std::vector<float> biases;   // count

  const float* filter(int j, int d) const { return weights.data() + static_cast<std::size_t>(j) * width * d; }
  float* filter(int j, int d) { return weights.data() + static_cast<std::size_t>(j) * width * d; }
};

// Trainable composition function: syllable embedding matrix Q (one d-column
// per inventory entry, column 0 = PAD pinned to zero) and per-width filter
// banks. Parameters are stored as 32-bit floats; all arithmetic on them runs
// in double.
struct ComposerParams {
  int d = 0;
  std::uint32_t inventory_size = 0;    // |S| + 1, PAD included
  std::vector<float> q;                // inventory_size columns of d floats
  std::vector<FilterBank> banks;       // width-ascending

  int repr_dim() const {
    int h = 0;
    for (const auto& b : banks) h += b.count;
    return h;
  }
  std::span<const float> syllable_vec(SyllableId sid) const {
    return {q.data() + static_cast<std::size_t>(sid) * d, static_cast<std::size_t>(d)};
  }
  std::span<float> syllable_vec(SyllableId sid) {
    return {q.data() + static_cast<std::size_t>(sid) * d, static_cast<std::size_t>(d)};
  }
};

// Composed word representation. values[j] = max-pooled tanh feature of filter
// j (filters enumerated width-ascending, filter-index-ascending), and
// pool_argmax[j] the position that won, kept for backpropagation.
struct WordRepr {
  std::vector<double> values;
  std::vector<int> pool_argmax;
};

// Gradients of (upstream . values) with respect to the composer parameters.
// Q gradients are sparse over the touched non-PAD syllable ids; filter and
// bias gradients are dense and follow the FilterBank layout.
struct ComposerGrads {
  int d = 0;
  std::vector<SyllableId> q_ids;                  // unique, non-PAD
  std::vector<double> q_grads;                    // q_ids.size() * d
  std::vector<std::vector<double>> filter_grads;  // per bank: count * width * d
  std::vector<std::vector<double>> bias_grads;    // per bank: count

  std::span<double> q_slot(SyllableId sid);       // find-or-append
  void reset(const ComposerParams& params);
};

// Q uniform in [-0.5/d, 0.5/d], filters uniform in +-sqrt(6 / (d*w + 1)),
// biases zero, PAD column zeroed. Bit-reproducible from the seed.
ComposerParams init_params(const TrainConfig& config, std::uint32_t inventory_size,
                           std::uint64_t seed);

// Per filter of width w, right-pad the id sequence with PAD when the word is
// shorter than w (feature map length max(l-w+1, 1)), tanh(Frobenius(slab, H)
// + b) at each position, max pool (smallest index wins ties), concatenate
// per-filter maxima width-ascending, filter-index-ascending.
WordRepr compose_word(const ComposerParams& params, std::span<const SyllableId> syllable_ids);
void compose_word(const ComposerParams& params, std::span<const SyllableId> syllable_ids,
                  WordRepr& out);

// Exact gradient of (upstream . values): each upstream component is routed
// through its recorded argmax position only, scaled by 1 - value^2.
// Contributions to the PAD column are dropped.
ComposerGrads compose_gradients(const ComposerParams& params,
                                std::span<const SyllableId> syllable_ids,
                                std::span<const double> upstream);

// Same, reusing a previously computed forward pass and caller-owned storage.
void compose_gradients(const ComposerParams& params, std::span<const SyllableId> syllable_ids,
                       const WordRepr& repr, std::span<const double> upstream,
                       ComposerGrads& out);

// SGD step: params -= lr * grads. Never writes the PAD column.
void apply_composer_update(ComposerParams& params, const ComposerGrads& grads, double lr);

}  // namespace sylvec
