#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sylvec/compose.hpp"
#include "sylvec/config.hpp"
#include "sylvec/hangul.hpp"
#include "sylvec/rng.hpp"

namespace sylvec {

// Dense table of per-word vectors, one contiguous dim-column per word.
// Used for the SGNS output ("context") side and for the baseline's tables.
struct EmbeddingTable {
  int dim = 0;
  std::uint32_t columns = 0;
  std::vector<float> values;  // columns * dim

  static EmbeddingTable zeros(int dim, std::uint32_t columns);
  static EmbeddingTable uniform(int dim, std::uint32_t columns, double range, Rng& rng);

  std::span<const float> col(std::uint32_t c) const {
    return {values.data() + static_cast<std::size_t>(c) * dim, static_cast<std::size_t>(dim)};
  }
  std::span<float> col(std::uint32_t c) {
    return {values.data() + static_cast<std::size_t>(c) * dim, static_cast<std::size_t>(dim)};
  }
};

using OutputEmbeddings = EmbeddingTable;

// Draws word ids proportional to count^power via inverse-CDF lookup.
// Stateful: owns its random stream.
class NegativeSampler {
 public:
  NegativeSampler(std::span<const std::uint64_t> counts, double power, std::uint64_t seed);

  // One id != exclude (collisions are redrawn). Requires >= 2 words.
  WordId draw(WordId exclude);
  void draw_into(int k, WordId exclude, std::vector<WordId>& out);

  std::size_t vocab_size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;  // normalized; back() == 1.0
  Rng rng_;
};

std::vector<WordId> draw_negatives(NegativeSampler& sampler, int k, WordId exclude);

// Skip-gram pair stream for one line: for each position, an effective window
// c (uniform in 1..window when dynamic, else = window) and one (center,
// context) pair per in-window neighbor, clipped at the line ends. Neighbors
// are emitted left to right.
std::vector<std::pair<WordId, WordId>> generate_pairs(std::span<const WordId> token_ids,
                                                      int window, bool dynamic, Rng& rng);
void generate_pairs(std::span<const WordId> token_ids, int window, bool dynamic, Rng& rng,
                    std::vector<std::pair<WordId, WordId>>& out);

// The trained syllable-composition model.
struct Model {
  Vocabulary vocab;
  SyllableInventory inventory;
  ComposerParams params;
  OutputEmbeddings output;
  TrainConfig config;
};

// Composed representation of any word whose syllables the inventory covers;
// identical code path whether or not the word is in the vocabulary.
WordRepr compose(const Model& model, std::string_view word);
std::vector<double> word_vector(const Model& model, std::string_view word);

// Loss and full analytic gradients of one SGNS sample set, nothing applied:
//   L = -log sigma(y . v_ctx) - sum_n log sigma(-y . v_n)
// upstream = dL/dy; output gradients are accumulated per unique column id.
struct SgnsOutputGradients {
  double loss = 0.0;
  std::vector<double> upstream;
  std::vector<WordId> output_ids;     // unique: context plus distinct negatives
  std::vector<double> output_grads;   // output_ids.size() * dim
};
SgnsOutputGradients sgns_output_gradients(std::span<const double> center_vec, WordId context,
                                          std::span<const WordId> negatives,
                                          const OutputEmbeddings& output);

// One joint SGD step on a (center, context) pair with pre-drawn negatives:
// composes the center word, computes exact gradients against the pre-update
// parameters, applies plain SGD with step lr to the touched output columns,
// touched Q columns, and all filters/biases. Returns the pre-update loss.
double sgns_step(Model& model, WordId center, WordId context,
                 std::span<const WordId> negatives, double lr);

// Linear decay from initial_lr to min_lr over T steps, clipped at min_lr.
double scheduled_lr(const TrainConfig& config, std::uint64_t step, std::uint64_t total_steps);

struct TrainOptions {
  int threads = 1;      // > 1 enables hogwild-style sharded updates (non-deterministic)
  bool progress = true; // per-epoch line on stderr
};

struct TrainResult {
  Model model;
  std::vector<double> epoch_mean_loss;
  std::vector<std::uint64_t> epoch_pairs;
};

// Full pipeline: vocabulary + inventory from the corpus, seeded init, then
// epochs of pair generation / negative sampling / sgns_step with the linear
// learning-rate schedule over the exact total pair count. Sequential mode
// (threads == 1) is bit-deterministic in the seed.
TrainResult train(const std::string& corpus_path, const TrainConfig& config,
                  const TrainOptions& options = {});

}  // namespace sylvec
