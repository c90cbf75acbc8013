#include "sylvec/compose.hpp"

#include <cmath>
#include <cstring>

#include "sylvec/rng.hpp"

namespace sylvec {

std::span<double> ComposerGrads::q_slot(SyllableId sid) {
  for (std::size_t i = 0; i < q_ids.size(); ++i) {
    if (q_ids[i] == sid) return {q_grads.data() + i * d, static_cast<std::size_t>(d)};
  }
  q_ids.push_back(sid);
  q_grads.resize(q_ids.size() * d, 0.0);
  return {q_grads.data() + (q_ids.size() - 1) * d, static_cast<std::size_t>(d)};
}

void ComposerGrads::reset(const ComposerParams& params) {
  d = params.d;
  q_ids.clear();
  q_grads.clear();
  filter_grads.resize(params.banks.size());
  bias_grads.resize(params.banks.size());
  for (std::size_t b = 0; b < params.banks.size(); ++b) {
    filter_grads[b].assign(params.banks[b].weights.size(), 0.0);
    bias_grads[b].assign(params.banks[b].biases.size(), 0.0);
  }
}

ComposerParams init_params(const TrainConfig& config, std::uint32_t inventory_size,
                           std::uint64_t seed) {
  config.validate();
  if (inventory_size == 0) throw ConfigError("cannot initialize over an empty inventory");

  ComposerParams p;
  p.d = config.syllable_dim;
  p.inventory_size = inventory_size;

  Rng rng(seed);
  const double q_range = 0.5 / p.d;
  p.q.resize(static_cast<std::size_t>(inventory_size) * p.d);
  for (float& v : p.q) v = static_cast<float>(rng.uniform(-q_range, q_range));
  std::memset(p.q.data(), 0, sizeof(float) * p.d);  // PAD column stays exactly zero

  for (std::size_t i = 0; i < config.widths.size(); ++i) {
    FilterBank bank;
    bank.width = config.widths[i];
    bank.count = config.filter_counts[i];
    const double range = std::sqrt(6.0 / (static_cast<double>(p.d) * bank.width + 1.0));
    bank.weights.resize(static_cast<std::size_t>(bank.count) * bank.width * p.d);
    for (float& v : bank.weights) v = static_cast<float>(rng.uniform(-range, range));
    bank.biases.assign(bank.count, 0.0f);
    p.banks.push_back(std::move(bank));
  }
  return p;
}

namespace {

inline void check_ids(const ComposerParams& params, std::span<const SyllableId> ids) {
  if (ids.empty()) throw InputError("cannot compose an empty syllable sequence");
  for (SyllableId sid : ids) {
    if (sid >= params.inventory_size)
      throw InputError("syllable id " + std::to_string(sid) + " out of range (inventory size " +
                       std::to_string(params.inventory_size) + ")");
  }
}

}  // namespace

void compose_word(const ComposerParams& params, std::span<const SyllableId> ids,
                  WordRepr& repr) {
  check_ids(params, ids);
  const int d = params.d;
  const int len = static_cast<int>(ids.size());

  repr.values.resize(params.repr_dim());
  repr.pool_argmax.resize(repr.values.size());

  std::size_t out = 0;
  for (const FilterBank& bank : params.banks) {
    const int w = bank.width;
    const int positions = std::max(len - w + 1, 1);
    for (int j = 0; j < bank.count; ++j) {
      const float* filter = bank.filter(j, d);
      double best = 0.0;
      int best_pos = 0;
      for (int pos = 0; pos < positions; ++pos) {
        double acc = bank.biases[j];
        for (int c = 0; c < w; ++c) {
          const int at = pos + c;
          const SyllableId sid = at < len ? ids[at] : SyllableInventory::kPadId;
          if (sid == SyllableInventory::kPadId) continue;  // zero column
          const float* qcol = params.q.data() + static_cast<std::size_t>(sid) * d;
          const float* hcol = filter + static_cast<std::size_t>(c) * d;
          double dot = 0.0;
          for (int r = 0; r < d; ++r) dot += static_cast<double>(qcol[r]) * hcol[r];
          acc += dot;
        }
        const double value = std::tanh(acc);
        if (pos == 0 || value > best) {  // strict >: smallest index wins ties
          best = value;
          best_pos = pos;
        }
      }
      repr.values[out] = best;
      repr.pool_argmax[out] = best_pos;
      ++out;
    }
  }
}

WordRepr compose_word(const ComposerParams& params, std::span<const SyllableId> ids) {
  WordRepr repr;
  compose_word(params, ids, repr);
  return repr;
}

void compose_gradients(const ComposerParams& params, std::span<const SyllableId> ids,
                       const WordRepr& repr, std::span<const double> upstream,
                       ComposerGrads& out) {
  check_ids(params, ids);
  if (upstream.size() != repr.values.size() ||
      repr.values.size() != static_cast<std::size_t>(params.repr_dim()))
    throw InputError("upstream length does not match the representation dimension");

  out.reset(params);
  const int d = params.d;
  const int len = static_cast<int>(ids.size());

  std::size_t flat = 0;
  for (std::size_t b = 0; b < params.banks.size(); ++b) {
    const FilterBank& bank = params.banks[b];
    const int w = bank.width;
    for (int j = 0; j < bank.count; ++j, ++flat) {
      const double g_up = upstream[flat];
      if (g_up == 0.0) continue;
      const double value = repr.values[flat];
      const double g_pre = g_up * (1.0 - value * value);  // tanh'
      out.bias_grads[b][j] += g_pre;

      const int pos = repr.pool_argmax[flat];
      const float* filter = bank.filter(j, d);
      double* fgrad = out.filter_grads[b].data() + static_cast<std::size_t>(j) * w * d;
      for (int c = 0; c < w; ++c) {
        const int at = pos + c;
        const SyllableId sid = at < len ? ids[at] : SyllableInventory::kPadId;
        if (sid == SyllableInventory::kPadId) continue;  // PAD gradient dropped; slab col is zero
        const float* qcol = params.q.data() + static_cast<std::size_t>(sid) * d;
        const float* hcol = filter + static_cast<std::size_t>(c) * d;
        double* fg = fgrad + static_cast<std::size_t>(c) * d;
        std::span<double> qg = out.q_slot(sid);
        for (int r = 0; r < d; ++r) {
          fg[r] += g_pre * qcol[r];
          qg[r] += g_pre * hcol[r];
        }
      }
    }
  }
}

ComposerGrads compose_gradients(const ComposerParams& params, std::span<const SyllableId> ids,
                                std::span<const double> upstream) {
  const WordRepr repr = compose_word(params, ids);
  ComposerGrads grads;
  compose_gradients(params, ids, repr, upstream, grads);
  return grads;
}

void apply_composer_update(ComposerParams& params, const ComposerGrads& grads, double lr) {
  const int d = params.d;
  for (std::size_t i = 0; i < grads.q_ids.size(); ++i) {
    float* qcol = params.q.data() + static_cast<std::size_t>(grads.q_ids[i]) * d;
    const double* g = grads.q_grads.data() + i * d;
    for (int r = 0; r < d; ++r) qcol[r] = static_cast<float>(qcol[r] - lr * g[r]);
  }
  for (std::size_t b = 0; b < params.banks.size(); ++b) {
    FilterBank& bank = params.banks[b];
    const std::vector<double>& fg = grads.filter_grads[b];
    for (std::size_t i = 0; i < bank.weights.size(); ++i)
      bank.weights[i] = static_cast<float>(bank.weights[i] - lr * fg[i]);
    const std::vector<double>& bg = grads.bias_grads[b];
    for (std::size_t i = 0; i < bank.biases.size(); ++i)
      bank.biases[i] = static_cast<float>(bank.biases[i] - lr * bg[i]);
  }
}

}  // namespace sylvec
