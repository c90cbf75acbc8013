#include "sylvec/baseline.hpp"

#include "train_loop.hpp"

namespace sylvec {

namespace {

// Center side of the baseline: a plain table lookup, gradient is the
// upstream itself on the looked-up column.
struct LookupCenter {
  EmbeddingTable* input;
  std::vector<double> y;

  int dim() const { return input->dim; }
  std::span<const double> forward(WordId center) {
    const auto col = input->col(center);
    y.assign(col.begin(), col.end());
    return y;
  }
  void backward(WordId center, std::span<const double> upstream, double lr) {
    auto col = input->col(center);
    for (int r = 0; r < input->dim; ++r)
      col[r] = static_cast<float>(col[r] - lr * upstream[r]);
  }
};

}  // namespace

BaselineTrainResult train_baseline(const std::string& corpus_path, const TrainConfig& config,
                                   const TrainOptions& options) {
  config.validate();

  BaselineTrainResult result;
  BaselineModel& model = result.model;
  model.config = config;
  model.vocab = build_vocab(corpus_path, config.min_count, config.lowercase);
  if (model.vocab.size() < 2)
    throw ConfigError("training needs at least 2 vocabulary words for negative sampling");

  const int h = config.repr_dim();
  Rng init_rng(config.seed);
  model.input = EmbeddingTable::uniform(h, static_cast<std::uint32_t>(model.vocab.size()),
                                        0.5 / h, init_rng);
  model.output = EmbeddingTable::zeros(h, static_cast<std::uint32_t>(model.vocab.size()));

  const auto lines = detail::load_corpus_ids(corpus_path, model.vocab, config.lowercase);
  LookupCenter center{&model.input, {}};
  detail::run_training(lines, model.vocab, config, center, model.output, options,
                       result.epoch_mean_loss, result.epoch_pairs);
  return result;
}

std::vector<float> baseline_vector(const BaselineModel& model, std::string_view word) {
  const WordId wid = model.vocab.find(word);
  if (wid >= model.vocab.size())
    throw NoRepresentationError("no representation: '" + std::string(word) +
                                "' is not in the vocabulary");
  const auto col = model.input.col(wid);
  return {col.begin(), col.end()};
}

std::vector<double> word_vector(const BaselineModel& model, std::string_view word) {
  const auto v = baseline_vector(model, word);
  return {v.begin(), v.end()};
}

BaselineSgnsGradients baseline_sgns_gradients(const BaselineModel& model, WordId center,
                                              WordId context,
                                              std::span<const WordId> negatives) {
  if (center >= model.vocab.size()) throw InputError("center id out of range");
  std::vector<double> y;
  {
    const auto col = model.input.col(center);
    y.assign(col.begin(), col.end());
  }
  SgnsOutputGradients og = sgns_output_gradients(y, context, negatives, model.output);
  BaselineSgnsGradients g;
  g.loss = og.loss;
  g.center_grad = og.upstream;  // d(loss)/d(input column) == upstream
  g.output_ids = std::move(og.output_ids);
  g.output_grads = std::move(og.output_grads);
  return g;
}

}  // namespace sylvec
