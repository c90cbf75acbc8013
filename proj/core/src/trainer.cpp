#include "sylvec/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "train_loop.hpp"

namespace sylvec {

EmbeddingTable EmbeddingTable::zeros(int dim, std::uint32_t columns) {
  EmbeddingTable t;
  t.dim = dim;
  t.columns = columns;
  t.values.assign(static_cast<std::size_t>(dim) * columns, 0.0f);
  return t;
}

EmbeddingTable EmbeddingTable::uniform(int dim, std::uint32_t columns, double range, Rng& rng) {
  EmbeddingTable t;
  t.dim = dim;
  t.columns = columns;
  t.values.resize(static_cast<std::size_t>(dim) * columns);
  for (float& v : t.values) v = static_cast<float>(rng.uniform(-range, range));
  return t;
}

NegativeSampler::NegativeSampler(std::span<const std::uint64_t> counts, double power,
                                 std::uint64_t seed)
    : rng_(seed) {
  if (counts.empty()) throw ConfigError("negative sampler needs a non-empty vocabulary");
  cdf_.reserve(counts.size());
  double running = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) throw ConfigError("negative sampler saw a zero-count word");
    running += std::pow(static_cast<double>(c), power);
    cdf_.push_back(running);
  }
  for (double& v : cdf_) v /= running;
  cdf_.back() = 1.0;
}

WordId NegativeSampler::draw(WordId exclude) {
  if (cdf_.size() < 2 && exclude < cdf_.size())
    throw InputError("cannot draw a negative from a single-word vocabulary");
  for (;;) {
    const double u = rng_.next_double();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const WordId id = static_cast<WordId>(it - cdf_.begin());
    if (id != exclude) return id;
  }
}

void NegativeSampler::draw_into(int k, WordId exclude, std::vector<WordId>& out) {
  out.clear();
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(draw(exclude));
}

std::vector<WordId> draw_negatives(NegativeSampler& sampler, int k, WordId exclude) {
  if (k < 1) throw InputError("negative-sample count must be >= 1");
  std::vector<WordId> out;
  sampler.draw_into(k, exclude, out);
  return out;
}

void generate_pairs(std::span<const WordId> token_ids, int window, bool dynamic, Rng& rng,
                    std::vector<std::pair<WordId, WordId>>& out) {
  out.clear();
  if (window < 1) throw InputError("window must be >= 1");
  const int n = static_cast<int>(token_ids.size());
  for (int p = 0; p < n; ++p) {
    const int c = dynamic ? 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(window)))
                          : window;
    const int lo = std::max(p - c, 0);
    const int hi = std::min(p + c, n - 1);
    for (int q = lo; q <= hi; ++q) {
      if (q != p) out.emplace_back(token_ids[p], token_ids[q]);
    }
  }
}

std::vector<std::pair<WordId, WordId>> generate_pairs(std::span<const WordId> token_ids,
                                                      int window, bool dynamic, Rng& rng) {
  std::vector<std::pair<WordId, WordId>> out;
  generate_pairs(token_ids, window, dynamic, rng, out);
  return out;
}

WordRepr compose(const Model& model, std::string_view word) {
  const WordId wid = model.vocab.find(word);
  if (wid < model.vocab.size()) return compose_word(model.params, model.vocab.syllable_ids[wid]);
  return compose_word(model.params, syllable_ids_for(model.inventory, word));
}

std::vector<double> word_vector(const Model& model, std::string_view word) {
  return compose(model, word).values;
}

double scheduled_lr(const TrainConfig& config, std::uint64_t step, std::uint64_t total_steps) {
  if (total_steps == 0) return config.initial_lr;
  const double progress = static_cast<double>(step) / static_cast<double>(total_steps);
  return std::max(config.initial_lr + (config.min_lr - config.initial_lr) * progress,
                  config.min_lr);
}

SgnsOutputGradients sgns_output_gradients(std::span<const double> center_vec, WordId context,
                                          std::span<const WordId> negatives,
                                          const OutputEmbeddings& output) {
  if (center_vec.size() != static_cast<std::size_t>(output.dim))
    throw InputError("center vector length does not match the output table");
  if (context >= output.columns) throw InputError("context id out of range");
  for (WordId n : negatives) {
    if (n >= output.columns) throw InputError("negative id out of range");
  }

  detail::SgnsScratch scratch;
  SgnsOutputGradients g;
  g.loss = detail::sgns_output_pass(center_vec, context, negatives, output, scratch);
  g.upstream = std::move(scratch.upstream);

  const int dim = output.dim;
  for (std::size_t j = 0; j < scratch.sample_ids.size(); ++j) {
    const WordId id = scratch.sample_ids[j];
    std::size_t slot = 0;
    while (slot < g.output_ids.size() && g.output_ids[slot] != id) ++slot;
    if (slot == g.output_ids.size()) {
      g.output_ids.push_back(id);
      g.output_grads.resize(g.output_ids.size() * dim, 0.0);
    }
    double* grad = g.output_grads.data() + slot * dim;
    for (int r = 0; r < dim; ++r) grad[r] += scratch.coeffs[j] * center_vec[r];
  }
  return g;
}

double sgns_step(Model& model, WordId center, WordId context,
                 std::span<const WordId> negatives, double lr) {
  if (center >= model.vocab.size()) throw InputError("center id out of range");
  if (context >= model.output.columns) throw InputError("context id out of range");
  for (WordId n : negatives) {
    if (n >= model.output.columns) throw InputError("negative id out of range");
  }
  if (!(lr > 0)) throw InputError("learning rate must be positive");

  const auto& ids = model.vocab.syllable_ids[center];
  const WordRepr repr = compose_word(model.params, ids);

  detail::SgnsScratch scratch;
  const double loss =
      detail::sgns_output_pass(repr.values, context, negatives, model.output, scratch);
  detail::sgns_apply_output(model.output, scratch, repr.values, lr);

  ComposerGrads grads;
  compose_gradients(model.params, ids, repr, scratch.upstream, grads);
  apply_composer_update(model.params, grads, lr);
  return loss;
}

namespace detail {

std::vector<std::vector<WordId>> load_corpus_ids(const std::string& corpus_path,
                                                 const Vocabulary& vocab, bool lowercase) {
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + corpus_path);
  std::vector<std::vector<WordId>> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<WordId> ids;
    for (auto& token : tokenize(line)) {
      if (lowercase) {  // the vocabulary was built with the same normalization
        std::u32string scalars = decode_utf8(token);
        for (char32_t& c : scalars)
          c = (c >= U'A' && c <= U'Z') ? c + (U'a' - U'A') : c;
        token = encode_utf8(scalars);
      }
      const WordId wid = vocab.find(token);
      if (wid < vocab.size()) ids.push_back(wid);
    }
    lines.push_back(std::move(ids));
  }
  return lines;
}

std::uint64_t count_total_pairs(const std::vector<std::vector<WordId>>& lines,
                                const Vocabulary& vocab, const TrainConfig& cfg, int threads) {
  std::uint64_t total = 0;
  const auto ranges = shard_lines(lines.size(), threads);
  std::vector<WordId> kept;
  std::vector<std::pair<WordId, WordId>> pairs;
  for (int s = 0; s < static_cast<int>(ranges.size()); ++s) {
    Rng pair_rng(stream_seed(cfg.seed, kPairStream, s));
    Rng sub_rng(stream_seed(cfg.seed, kSubsampleStream, s));
    const auto shard =
        std::span(lines).subspan(ranges[s].begin, ranges[s].end - ranges[s].begin);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      for_each_pair_in_lines(shard, cfg, vocab, pair_rng, sub_rng, kept, pairs,
                             [&](WordId, WordId) { ++total; });
    }
  }
  return total;
}

}  // namespace detail

namespace {

// Center side of the syllable model: compose on forward, exact composer
// gradients on backward. Copies share the parameters and own the scratch.
struct SyllableCenter {
  ComposerParams* params;
  const std::vector<std::vector<SyllableId>>* decompositions;
  WordRepr repr;
  ComposerGrads grads;

  int dim() const { return params->repr_dim(); }
  std::span<const double> forward(WordId center) {
    compose_word(*params, (*decompositions)[center], repr);
    return repr.values;
  }
  void backward(WordId center, std::span<const double> upstream, double lr) {
    compose_gradients(*params, (*decompositions)[center], repr, upstream, grads);
    apply_composer_update(*params, grads, lr);
  }
};

}  // namespace

TrainResult train(const std::string& corpus_path, const TrainConfig& config,
                  const TrainOptions& options) {
  config.validate();

  TrainResult result;
  Model& model = result.model;
  model.config = config;
  model.vocab = build_vocab(corpus_path, config.min_count, config.lowercase);
  if (model.vocab.size() < 2)
    throw ConfigError("training needs at least 2 vocabulary words for negative sampling");
  model.inventory = build_syllable_inventory(model.vocab);
  model.params = init_params(config, static_cast<std::uint32_t>(model.inventory.size()),
                             config.seed);
  model.output = EmbeddingTable::zeros(config.repr_dim(),
                                       static_cast<std::uint32_t>(model.vocab.size()));

  const auto lines = detail::load_corpus_ids(corpus_path, model.vocab, config.lowercase);
  SyllableCenter center{&model.params, &model.vocab.syllable_ids, {}, {}};
  detail::run_training(lines, model.vocab, config, center, model.output, options,
                       result.epoch_mean_loss, result.epoch_pairs);
  return result;
}

}  // namespace sylvec
