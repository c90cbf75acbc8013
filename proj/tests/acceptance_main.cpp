// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; the exit
// code is the number of failed criteria. Run with no arguments for all
// criteria or pass criterion numbers to run a subset.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sylvec/baseline.hpp"
#include "sylvec/eval.hpp"
#include "sylvec/model_io.hpp"
#include "sylvec/trainer.hpp"
#include "test_util.hpp"

using namespace sylvec;

namespace {

constexpr double kEightLn2 = 5.5451774444795623;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure(message);
}

std::string temp_dir() {
  static const std::string dir = [] {
    std::string d = "/tmp/sylvec_acceptance_XXXXXX";
    if (!mkdtemp(d.data())) throw std::runtime_error("mkdtemp failed");
    return d;
  }();
  return dir;
}

double sigmoid_ref(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// ---------------------------------------------------------------------------
// Criterion 1: gradient correctness of the full SGNS loss.

void criterion_gradients(std::string& detail) {
  Rng rng(20240811);
  int checked = 0, attempts = 0;
  std::uint64_t params_checked = 0;

  while (checked < 100 && attempts < 400) {
    ++attempts;
    const int d = 2 + static_cast<int>(rng.below(3));  // d <= 4
    std::vector<int> widths, counts;
    for (int w = 1; w <= 3; ++w) {
      if (rng.below(2) == 0 || (w == 3 && widths.empty())) {
        widths.push_back(w);
        counts.push_back(1 + static_cast<int>(rng.below(2)));
      }
    }
    TrainConfig cfg;
    cfg.syllable_dim = d;
    cfg.widths = widths;
    cfg.filter_counts = counts;
    const std::uint32_t inventory = 5;
    ComposerParams params = init_params(cfg, inventory, rng.next_u64());
    for (auto& bank : params.banks)
      for (float& b : bank.biases) b = static_cast<float>(rng.uniform(-0.2, 0.2));

    std::vector<SyllableId> ids;
    const int len = 1 + static_cast<int>(rng.below(4));  // word length <= 4
    for (int i = 0; i < len; ++i) ids.push_back(1 + static_cast<SyllableId>(rng.below(4)));
    if (testutil::has_near_tied_max(testutil::feature_maps_oracle(params, ids))) continue;

    const std::uint32_t v = 5;
    EmbeddingTable output = EmbeddingTable::zeros(params.repr_dim(), v);
    for (float& x : output.values) x = static_cast<float>(rng.uniform(-0.8, 0.8));

    const WordId context = static_cast<WordId>(rng.below(v));
    std::vector<WordId> negs;
    for (int i = 0; i < 3; ++i) negs.push_back(static_cast<WordId>(rng.below(v)));

    const auto loss_fn = [&] {
      const WordRepr repr = compose_word(params, ids);
      return sgns_output_gradients(repr.values, context, negs, output).loss;
    };
    const WordRepr repr = compose_word(params, ids);
    const SgnsOutputGradients og = sgns_output_gradients(repr.values, context, negs, output);
    const ComposerGrads cg = compose_gradients(params, ids, og.upstream);

    for (std::uint32_t sid = 1; sid < inventory; ++sid) {
      std::size_t slot = cg.q_ids.size();
      for (std::size_t i = 0; i < cg.q_ids.size(); ++i)
        if (cg.q_ids[i] == sid) slot = i;
      for (int r = 0; r < d; ++r) {
        const double analytic = slot < cg.q_ids.size() ? cg.q_grads[slot * d + r] : 0.0;
        const double fd = testutil::central_difference(params.q[sid * d + r], 1e-4, loss_fn);
        require(testutil::grad_matches(analytic, fd),
                "Q gradient mismatch (analytic " + std::to_string(analytic) + ", fd " +
                    std::to_string(fd) + ")");
        ++params_checked;
      }
    }
    for (std::size_t b = 0; b < params.banks.size(); ++b) {
      auto& bank = params.banks[b];
      for (std::size_t i = 0; i < bank.weights.size(); ++i) {
        const double fd = testutil::central_difference(bank.weights[i], 1e-4, loss_fn);
        require(testutil::grad_matches(cg.filter_grads[b][i], fd), "filter gradient mismatch");
        ++params_checked;
      }
      for (std::size_t i = 0; i < bank.biases.size(); ++i) {
        const double fd = testutil::central_difference(bank.biases[i], 1e-4, loss_fn);
        require(testutil::grad_matches(cg.bias_grads[b][i], fd), "bias gradient mismatch");
        ++params_checked;
      }
    }
    const int h = output.dim;
    for (std::uint32_t col = 0; col < v; ++col) {
      std::size_t slot = og.output_ids.size();
      for (std::size_t i = 0; i < og.output_ids.size(); ++i)
        if (og.output_ids[i] == col) slot = i;
      for (int r = 0; r < h; ++r) {
        const double analytic =
            slot < og.output_ids.size() ? og.output_grads[slot * h + r] : 0.0;
        const double fd = testutil::central_difference(
            output.values[static_cast<std::size_t>(col) * h + r], 1e-4, loss_fn);
        require(testutil::grad_matches(analytic, fd), "output gradient mismatch");
        ++params_checked;
      }
    }
    ++checked;
  }
  require(checked >= 100, "only " + std::to_string(checked) + " valid instances");
  detail = std::to_string(checked) + " instances, " + std::to_string(params_checked) +
           " partial derivatives";
}

// ---------------------------------------------------------------------------
// Criterion 2: analytic initial loss with a zero output table and k = 7.

void criterion_initial_loss(std::string& detail) {
  TrainConfig cfg;
  cfg.syllable_dim = 12;
  cfg.widths = {1, 2, 3};
  cfg.filter_counts = {4, 4, 4};
  cfg.negatives = 7;
  cfg.min_count = 1;
  cfg.seed = 5;
  Model model = testutil::make_model(testutil::make_toy_corpus(20, 33), cfg);

  NegativeSampler sampler(model.vocab.counts, cfg.unigram_power, 21);
  double worst = 0.0;
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Model fresh = model;  // zero output table each time
    const WordId center = static_cast<WordId>(rng.below(fresh.vocab.size()));
    const WordId context = static_cast<WordId>(rng.below(fresh.vocab.size()));
    const auto negs = draw_negatives(sampler, 7, context);
    const double loss = sgns_step(fresh, center, context, negs, 0.025);
    worst = std::max(worst, std::abs(loss - kEightLn2));
  }
  require(worst < 1e-6, "worst deviation " + std::to_string(worst));
  std::ostringstream s;
  s << "max |loss - 8 ln 2| = " << worst;
  detail = s.str();
}

// ---------------------------------------------------------------------------
// Criterion 3: 12-epoch training trend on a 200-line toy corpus.

void criterion_training_trend(std::string& detail) {
  const std::string path = testutil::write_temp_file(
      temp_dir(), "toy200.txt", testutil::make_toy_corpus(200, 2024));
  TrainConfig cfg;
  cfg.syllable_dim = 32;
  cfg.widths = {1, 2, 3, 4};
  cfg.filter_counts = {8, 8, 8, 8};
  cfg.window = 4;
  cfg.negatives = 7;
  cfg.epochs = 12;
  cfg.min_count = 2;
  cfg.initial_lr = 0.05;
  cfg.seed = 11;

  const TrainResult result = train(path, cfg, {.threads = 1, .progress = false});
  const auto& losses = result.epoch_mean_loss;
  require(losses.size() == 12, "expected 12 epoch losses");

  // Least-squares slope over (epoch index, mean loss).
  const double n = 12.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int e = 0; e < 12; ++e) {
    sx += e;
    sy += losses[e];
    sxx += static_cast<double>(e) * e;
    sxy += e * losses[e];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  require(slope < 0.0, "least-squares slope " + std::to_string(slope) + " not negative");
  require(losses.back() < 0.9 * losses.front(),
          "final " + std::to_string(losses.back()) + " not < 0.9 * first " +
              std::to_string(losses.front()));
  require(losses.front() < kEightLn2, "epoch-1 mean loss not below the zero-parameter level");
  std::ostringstream s;
  s << "slope " << slope << ", first " << losses.front() << ", final " << losses.back();
  detail = s.str();
}

// ---------------------------------------------------------------------------
// Criteria 4 and 5 share a trained stems-by-postpositions pair of models.

struct StemFixture {
  testutil::StemCorpus corpus;
  Model syllable;
  BaselineModel baseline;
};

const StemFixture& stem_fixture() {
  static const std::unique_ptr<StemFixture> fixture = [] {
    auto f = std::make_unique<StemFixture>();
    f->corpus = testutil::make_stem_corpus(50, 907);
    const std::string path =
        testutil::write_temp_file(temp_dir(), "stems.txt", f->corpus.text);
    TrainConfig cfg;
    cfg.syllable_dim = 32;
    cfg.widths = {1, 2, 3, 4};
    cfg.filter_counts = {8, 8, 8, 8};
    cfg.window = 3;
    cfg.negatives = 5;
    cfg.epochs = 8;
    cfg.min_count = 1;
    cfg.initial_lr = 0.06;
    cfg.seed = 13;
    f->syllable = train(path, cfg, {.threads = 1, .progress = false}).model;
    f->baseline = train_baseline(path, cfg, {.threads = 1, .progress = false}).model;
    return f;
  }();
  return *fixture;
}

void criterion_oov(std::string& detail) {
  const StemFixture& f = stem_fixture();
  const auto& held_out = f.corpus.held_out_forms;

  int shared_stem = 0;
  for (std::size_t i = 0; i < held_out.size(); ++i) {
    require(!f.syllable.vocab.contains(held_out[i]), "held-out form leaked into the corpus");
    const auto neighbors = nearest_neighbors(f.syllable, held_out[i], 1);
    require(neighbors.size() == 1, "expected one neighbor");
    if (neighbors[0].word.starts_with(f.corpus.stems[i])) ++shared_stem;
  }
  require(shared_stem >= static_cast<int>(0.8 * held_out.size()),
          "only " + std::to_string(shared_stem) + "/" + std::to_string(held_out.size()) +
              " neighbors share the stem");

  int no_representation = 0;
  for (const auto& form : held_out) {
    try {
      baseline_vector(f.baseline, form);
    } catch (const NoRepresentationError&) {
      ++no_representation;
    }
  }
  require(no_representation == static_cast<int>(held_out.size()),
          "baseline produced a vector for a held-out form");
  detail = std::to_string(shared_stem) + "/" + std::to_string(held_out.size()) +
           " stem-sharing neighbors; baseline no-representation " +
           std::to_string(no_representation) + "/" + std::to_string(held_out.size());
}

void criterion_parallelism(std::string& detail) {
  const StemFixture& f = stem_fixture();
  const auto& pairs = f.corpus.first_pp_pairs;
  require(pairs.size() == 50, "expected 50 pairs");

  const PostpositionReport syl = postposition_cluster_report(f.syllable, pairs);
  const PostpositionReport base = postposition_cluster_report(f.baseline, pairs);
  require(syl.pairs_used == 50 && base.pairs_used == 50, "degenerate displacements");
  require(syl.parallelism > base.parallelism,
          "syllable " + std::to_string(syl.parallelism) + " not > baseline " +
              std::to_string(base.parallelism));
  std::ostringstream s;
  s << "syllable " << syl.parallelism << " vs baseline " << base.parallelism;
  detail = s.str();
}

// ---------------------------------------------------------------------------
// Criterion 6: oracle equivalence for pearson, PCA, and nearest neighbors.

void criterion_oracles(std::string& detail) {
  Rng rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(18));
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = rng.uniform(-10, 10);
      ys[i] = rng.uniform(-10, 10);
    }
    const double delta = std::abs(pearson(xs, ys) - testutil::pearson_oracle(xs, ys));
    require(delta < 1e-10, "pearson vs longhand oracle: delta " + std::to_string(delta));
  }

  for (std::uint64_t seed : {71u, 72u, 73u}) {
    Rng data_rng(seed);
    std::vector<std::vector<double>> vectors;
    for (int i = 0; i < 10; ++i) {
      std::vector<double> p(6);
      for (double& x : p) x = data_rng.uniform(-3, 3);
      vectors.push_back(p);
    }
    const PcaProjection proj = pca_project(vectors);

    Eigen::MatrixXd x(10, 6);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 6; ++j) x(i, j) = vectors[i][j];
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    const Eigen::MatrixXd cov = x.transpose() * x / 9.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    for (int c = 0; c < 2; ++c) {
      const Eigen::VectorXd want = solver.eigenvectors().col(5 - c);
      double dot = 0;
      for (int j = 0; j < 6; ++j) dot += proj.components[c][j] * want(j);
      const double sign = dot < 0 ? -1.0 : 1.0;
      for (int j = 0; j < 6; ++j) {
        require(std::abs(proj.components[c][j] - sign * want(j)) < 1e-6,
                "pca component differs from the eigendecomposition oracle");
      }
    }
  }

  // Nearest neighbors against an exhaustive sort on a 10-word model.
  std::string corpus;
  for (int i = 0; i < 10; ++i)
    corpus += testutil::hangul_word({static_cast<char32_t>(0xAC00 + 13 * i),
                                     static_cast<char32_t>(0xAE00 + 19 * i)}) +
              " ";
  TrainConfig cfg;
  cfg.syllable_dim = 8;
  cfg.widths = {1, 2};
  cfg.filter_counts = {4, 4};
  cfg.min_count = 1;
  cfg.seed = 23;
  const Model model = testutil::make_model(corpus, cfg);
  require(model.vocab.size() == 10, "expected a 10-word model");

  for (WordId q = 0; q < 10; ++q) {
    const std::string query = model.vocab.id_to_word[q];
    const auto got = nearest_neighbors(model, query, 10);
    struct Scored {
      double sim;
      WordId id;
    };
    std::vector<Scored> oracle;
    const auto qv = word_vector(model, query);
    for (WordId w = 0; w < 10; ++w) {
      if (w == q) continue;
      oracle.push_back({cosine(qv, word_vector(model, model.vocab.id_to_word[w])), w});
    }
    std::sort(oracle.begin(), oracle.end(), [](const Scored& a, const Scored& b) {
      if (a.sim != b.sim) return a.sim > b.sim;
      return a.id < b.id;
    });
    require(got.size() == oracle.size(), "neighbor count mismatch");
    for (std::size_t i = 0; i < got.size(); ++i) {
      require(got[i].word == model.vocab.id_to_word[oracle[i].id] &&
                  got[i].similarity == oracle[i].sim,
              "neighbor list differs from the exhaustive sort oracle");
    }
  }
  detail = "pearson x100, pca x3, nearest-neighbor x10 queries";
}

// ---------------------------------------------------------------------------
// Criterion 7: determinism and persistence.

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_persistence(std::string& detail) {
  const std::string corpus_path = testutil::write_temp_file(
      temp_dir(), "persist.txt", testutil::make_toy_corpus(60, 404));
  TrainConfig cfg;
  cfg.syllable_dim = 12;
  cfg.widths = {1, 2, 3};
  cfg.filter_counts = {4, 4, 4};
  cfg.epochs = 3;
  cfg.min_count = 1;
  cfg.seed = 31;

  // Bit-identical model files from identical seed + corpus + config.
  const std::string path_a = temp_dir() + "/det_a.sylvec";
  const std::string path_b = temp_dir() + "/det_b.sylvec";
  save_model(train(corpus_path, cfg, {.threads = 1, .progress = false}).model, path_a);
  save_model(train(corpus_path, cfg, {.threads = 1, .progress = false}).model, path_b);
  require(file_bytes(path_a) == file_bytes(path_b), "sequential training is not bit-reproducible");

  save_model(train_baseline(corpus_path, cfg, {.threads = 1, .progress = false}).model, path_a);
  save_model(train_baseline(corpus_path, cfg, {.threads = 1, .progress = false}).model, path_b);
  require(file_bytes(path_a) == file_bytes(path_b), "baseline training is not bit-reproducible");

  // Save -> load -> save round-trips bit-exactly.
  const Model trained = train(corpus_path, cfg, {.threads = 1, .progress = false}).model;
  const std::string round_a = temp_dir() + "/round_a.sylvec";
  const std::string round_b = temp_dir() + "/round_b.sylvec";
  save_model(trained, round_a);
  const AnyModel loaded = load_model(round_a);
  require(std::holds_alternative<Model>(loaded), "wrong kind after load");
  const Model& reloaded = std::get<Model>(loaded);
  require(reloaded.params.q == trained.params.q, "Q not bit-exact after round trip");
  require(reloaded.output.values == trained.output.values, "output not bit-exact");
  require(reloaded.vocab.syllable_ids == trained.vocab.syllable_ids,
          "decompositions not reproduced");
  save_model(reloaded, round_b);
  require(file_bytes(round_a) == file_bytes(round_b), "round-trip bytes differ");

  // Export and parse back within 5e-7 per entry.
  const std::string export_path = temp_dir() + "/export.txt";
  export_text_embeddings(trained, export_path);
  std::ifstream in(export_path);
  std::string header;
  std::getline(in, header);
  {
    std::istringstream hf(header);
    std::size_t v = 0;
    int h = 0;
    hf >> v >> h;
    require(v == trained.vocab.size() && h == trained.params.repr_dim(),
            "export header mismatch");
  }
  std::string row;
  double worst = 0;
  std::size_t rows = 0;
  while (std::getline(in, row)) {
    if (row.empty()) continue;
    std::istringstream fields(row);
    std::string word;
    fields >> word;
    const auto expected = word_vector(trained, word);
    for (double e : expected) {
      double got = 0;
      fields >> got;
      worst = std::max(worst, std::abs(got - e));
    }
    ++rows;
  }
  require(rows == trained.vocab.size(), "export row count mismatch");
  require(worst <= 5e-7, "export parse-back deviation " + std::to_string(worst));
  std::ostringstream s;
  s << "files identical; round trip exact; export max deviation " << worst;
  detail = s.str();
}

// ---------------------------------------------------------------------------
// Criterion 8: invariant suite.

void criterion_invariants(std::string& detail) {
  const std::string corpus_path = testutil::write_temp_file(
      temp_dir(), "invariants.txt", testutil::make_toy_corpus(80, 505));
  TrainConfig cfg;
  cfg.syllable_dim = 16;
  cfg.widths = {1, 2, 3, 4};
  cfg.filter_counts = {4, 4, 4, 4};  // h = 16
  cfg.epochs = 4;
  cfg.min_count = 1;
  cfg.seed = 77;
  Model model = train(corpus_path, cfg, {.threads = 1, .progress = false}).model;

  // PAD column exactly zero after training.
  for (int r = 0; r < model.params.d; ++r)
    require(model.params.q[r] == 0.0f, "PAD column drifted");

  // Representation dimension and open-interval range for lengths 1..10.
  Rng rng(909);
  const int h = model.params.repr_dim();
  for (int len = 1; len <= 10; ++len) {
    std::vector<SyllableId> ids;
    for (int i = 0; i < len; ++i)
      ids.push_back(1 + static_cast<SyllableId>(
                            rng.below(model.params.inventory_size - 1)));
    const WordRepr repr = compose_word(model.params, ids);
    require(static_cast<int>(repr.values.size()) == h, "dimension changed with word length");
    for (double v : repr.values)
      require(v > -1.0 && v < 1.0, "composed value outside (-1, 1)");
  }
  for (std::size_t w = 0; w < model.vocab.size(); ++w) {
    const WordRepr repr = compose_word(model.params, model.vocab.syllable_ids[w]);
    for (double v : repr.values)
      require(v > -1.0 && v < 1.0, "vocabulary composed value outside (-1, 1)");
  }

  // Randomized step audits: only the expected regions change, and they change
  // by exactly the analytic SGD delta (within float-update rounding).
  NegativeSampler sampler(model.vocab.counts, cfg.unigram_power, 3131);
  const double lr = 0.03;
  for (int audit = 0; audit < 20; ++audit) {
    const WordId center = static_cast<WordId>(rng.below(model.vocab.size()));
    const WordId context = static_cast<WordId>(rng.below(model.vocab.size()));
    const auto negs = draw_negatives(sampler, cfg.negatives, context);

    const Model before = model;
    sgns_step(model, center, context, negs, lr);

    // Replicated update: per-sample coefficients against pre-step parameters.
    const auto& ids = before.vocab.syllable_ids[center];
    const WordRepr repr = compose_word(before.params, ids);
    std::vector<WordId> samples{context};
    samples.insert(samples.end(), negs.begin(), negs.end());
    std::vector<float> expected_output = before.output.values;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const float* col =
          before.output.values.data() + static_cast<std::size_t>(samples[j]) * h;
      double score = 0;
      for (int r = 0; r < h; ++r) score += repr.values[r] * col[r];
      const double coeff = sigmoid_ref(score) - (j == 0 ? 1.0 : 0.0);
      float* out = expected_output.data() + static_cast<std::size_t>(samples[j]) * h;
      for (int r = 0; r < h; ++r)
        out[r] = static_cast<float>(out[r] - lr * coeff * repr.values[r]);
    }
    const SgnsOutputGradients og =
        sgns_output_gradients(repr.values, context, negs, before.output);
    const ComposerGrads cg = compose_gradients(before.params, ids, og.upstream);

    const auto close = [](float a, float b) {
      return std::abs(static_cast<double>(a) - static_cast<double>(b)) <=
             6e-7 * std::max(1.0, std::abs(static_cast<double>(a)));
    };
    for (std::uint32_t col = 0; col < model.output.columns; ++col) {
      const bool touched =
          std::find(samples.begin(), samples.end(), col) != samples.end();
      for (int r = 0; r < h; ++r) {
        const std::size_t at = static_cast<std::size_t>(col) * h + r;
        if (!touched) {
          require(model.output.values[at] == before.output.values[at],
                  "untouched output column changed");
        } else {
          require(close(model.output.values[at], expected_output[at]),
                  "output update does not match the analytic delta");
        }
      }
    }
    const int d = model.params.d;
    for (std::uint32_t sid = 0; sid < model.params.inventory_size; ++sid) {
      const bool touched = std::find(ids.begin(), ids.end(), sid) != ids.end();
      std::size_t slot = cg.q_ids.size();
      for (std::size_t i = 0; i < cg.q_ids.size(); ++i)
        if (cg.q_ids[i] == sid) slot = i;
      for (int r = 0; r < d; ++r) {
        const std::size_t at = static_cast<std::size_t>(sid) * d + r;
        if (!touched) {
          require(model.params.q[at] == before.params.q[at], "untouched Q column changed");
        } else {
          const double grad = slot < cg.q_ids.size() ? cg.q_grads[slot * d + r] : 0.0;
          const float expected =
              static_cast<float>(static_cast<double>(before.params.q[at]) - lr * grad);
          require(close(model.params.q[at], expected),
                  "Q update does not match the analytic delta");
        }
      }
    }
    for (std::size_t b = 0; b < model.params.banks.size(); ++b) {
      for (std::size_t i = 0; i < model.params.banks[b].weights.size(); ++i) {
        const float expected = static_cast<float>(
            static_cast<double>(before.params.banks[b].weights[i]) -
            lr * cg.filter_grads[b][i]);
        require(close(model.params.banks[b].weights[i], expected),
                "filter update does not match the analytic delta");
      }
    }
    require(model.params.q[0] == 0.0f, "PAD touched by a step");
  }
  detail = "PAD zero, range/dimension over lengths 1..10, 20 step audits";
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "gradient correctness vs central finite differences", 30.0, criterion_gradients},
      {2, "analytic initial loss 8 ln 2", 1.0, criterion_initial_loss},
      {3, "12-epoch training trend on the toy corpus", 120.0, criterion_training_trend},
      {4, "OOV nearest-neighbor reproduction on held-out forms", 300.0, criterion_oov},
      {5, "postposition displacement parallelism vs baseline", 300.0, criterion_parallelism},
      {6, "oracle equivalence (pearson, pca, nearest neighbors)", 120.0, criterion_oracles},
      {7, "determinism and persistence", 120.0, criterion_persistence},
      {8, "invariant suite", 120.0, criterion_invariants},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) == selected.end())
      continue;
    const auto started = std::chrono::steady_clock::now();
    std::string detail;
    bool passed = false;
    std::string error;
    try {
      criterion.run(detail);
      passed = true;
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (passed && seconds > criterion.limit_seconds) {
      passed = false;
      error = "exceeded the " + std::to_string(criterion.limit_seconds) + " s runtime limit";
    }
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", passed ? "PASS" : "FAIL", criterion.id,
                criterion.name, seconds,
                passed ? (detail.empty() ? "" : " -- ") : " -- ",
                passed ? detail.c_str() : error.c_str());
    if (!passed) ++failures;
  }
  return failures;
}
