// sylvec: train / nn / eval-sim / pca-pairs / export over syllable-composition
// and baseline skip-gram models. Exit codes: 0 ok, 1 runtime error, 2 usage.

#include <charconv>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sylvec/baseline.hpp"
#include "sylvec/eval.hpp"
#include "sylvec/model_io.hpp"
#include "sylvec/trainer.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_usage(std::FILE* to) {
  std::fputs(
      "usage: sylvec <command> [flags]\n"
      "\n"
      "commands:\n"
      "  train      --corpus PATH --out PATH [--dim 320] [--window 4] [--negatives 7]\n"
      "             [--epochs 12] [--widths 1,2,3,4] [--filters-per-width 80]\n"
      "             [--min-count 5] [--lr 0.025] [--min-lr 0.0001] [--seed 1]\n"
      "             [--subsample 0] [--static-window] [--lowercase] [--baseline]\n"
      "             [--threads 1] [--quiet]\n"
      "  nn         --model PATH --word W [--k 10]\n"
      "  eval-sim   --model PATH --pairs PATH\n"
      "  pca-pairs  --model PATH --pairs PATH --out PATH\n"
      "  export     --model PATH --out PATH\n",
      to);
}

class Flags {
 public:
  Flags(int argc, char** argv) : argc_(argc), argv_(argv) {}

  bool next(std::string_view& flag) {
    if (index_ >= argc_) return false;
    flag = argv_[index_++];
    return true;
  }
  std::string_view value(std::string_view flag) {
    if (index_ >= argc_)
      throw UsageError("flag " + std::string(flag) + " needs a value");
    return argv_[index_++];
  }

 private:
  int argc_;
  char** argv_;
  int index_ = 0;
};

int parse_int(std::string_view flag, std::string_view text) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw UsageError("flag " + std::string(flag) + ": '" + std::string(text) +
                     "' is not an integer");
  return v;
}

double parse_real(std::string_view flag, std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw UsageError("flag " + std::string(flag) + ": '" + s + "' is not a number");
  return v;
}

std::vector<int> parse_widths(std::string_view text) {
  std::vector<int> widths;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    widths.push_back(parse_int("--widths", text.substr(start, comma - start)));
    start = comma + 1;
    if (comma == text.size()) break;
  }
  return widths;
}

std::string require(const std::optional<std::string>& value, std::string_view flag) {
  if (!value) throw UsageError("missing required flag " + std::string(flag));
  return *value;
}

int cmd_train(Flags& flags) {
  sylvec::TrainConfig config;
  sylvec::TrainOptions options;
  std::optional<std::string> corpus, out;
  bool baseline = false;
  int filters_per_width = 80;
  bool filters_flag_seen = false;

  std::string_view flag;
  while (flags.next(flag)) {
    if (flag == "--corpus") corpus = std::string(flags.value(flag));
    else if (flag == "--out") out = std::string(flags.value(flag));
    else if (flag == "--dim") config.syllable_dim = parse_int(flag, flags.value(flag));
    else if (flag == "--window") config.window = parse_int(flag, flags.value(flag));
    else if (flag == "--negatives") config.negatives = parse_int(flag, flags.value(flag));
    else if (flag == "--epochs") config.epochs = parse_int(flag, flags.value(flag));
    else if (flag == "--widths") config.widths = parse_widths(flags.value(flag));
    else if (flag == "--filters-per-width") {
      filters_per_width = parse_int(flag, flags.value(flag));
      filters_flag_seen = true;
    } else if (flag == "--min-count") {
      const int mc = parse_int(flag, flags.value(flag));
      if (mc < 1) throw UsageError("--min-count must be >= 1");
      config.min_count = static_cast<std::uint64_t>(mc);
    } else if (flag == "--lr") config.initial_lr = parse_real(flag, flags.value(flag));
    else if (flag == "--min-lr") config.min_lr = parse_real(flag, flags.value(flag));
    else if (flag == "--seed") config.seed = static_cast<std::uint64_t>(parse_int(flag, flags.value(flag)));
    else if (flag == "--subsample") config.subsample = parse_real(flag, flags.value(flag));
    else if (flag == "--static-window") config.dynamic_window = false;
    else if (flag == "--lowercase") config.lowercase = true;
    else if (flag == "--baseline") baseline = true;
    else if (flag == "--threads") options.threads = parse_int(flag, flags.value(flag));
    else if (flag == "--quiet") options.progress = false;
    else throw UsageError("unknown flag " + std::string(flag));
  }
  const std::string corpus_path = require(corpus, "--corpus");
  const std::string out_path = require(out, "--out");

  if (config.widths.size() != config.filter_counts.size() || filters_flag_seen)
    config.filter_counts.assign(config.widths.size(), filters_per_width);
  if (options.threads < 1) throw UsageError("--threads must be >= 1");
  try {
    config.validate();  // bad hyperparameter values are usage errors
  } catch (const sylvec::ConfigError& e) {
    throw UsageError(e.what());
  }

  std::vector<double> losses;
  if (baseline) {
    auto result = sylvec::train_baseline(corpus_path, config, options);
    losses = std::move(result.epoch_mean_loss);
    sylvec::save_model(result.model, out_path);
  } else {
    auto result = sylvec::train(corpus_path, config, options);
    losses = std::move(result.epoch_mean_loss);
    sylvec::save_model(result.model, out_path);
  }
  for (std::size_t e = 0; e < losses.size(); ++e)
    std::printf("%zu\t%.6f\n", e + 1, losses[e]);
  return 0;
}

int cmd_nn(Flags& flags) {
  std::optional<std::string> model_path, word;
  int k = 10;
  std::string_view flag;
  while (flags.next(flag)) {
    if (flag == "--model") model_path = std::string(flags.value(flag));
    else if (flag == "--word") word = std::string(flags.value(flag));
    else if (flag == "--k") k = parse_int(flag, flags.value(flag));
    else throw UsageError("unknown flag " + std::string(flag));
  }
  const std::string path = require(model_path, "--model");
  const std::string query = require(word, "--word");
  if (k < 1) throw UsageError("--k must be >= 1");

  const sylvec::AnyModel model = sylvec::load_model(path);
  const auto neighbors = std::visit(
      [&](const auto& m) { return sylvec::nearest_neighbors(m, query, k); }, model);
  for (const auto& n : neighbors) std::printf("%s\t%.6f\n", n.word.c_str(), n.similarity);
  return 0;
}

int cmd_eval_sim(Flags& flags) {
  std::optional<std::string> model_path, pairs_path;
  std::string_view flag;
  while (flags.next(flag)) {
    if (flag == "--model") model_path = std::string(flags.value(flag));
    else if (flag == "--pairs") pairs_path = std::string(flags.value(flag));
    else throw UsageError("unknown flag " + std::string(flag));
  }
  const std::string path = require(model_path, "--model");
  const auto dataset = sylvec::load_similarity_pairs(require(pairs_path, "--pairs"));

  const sylvec::AnyModel model = sylvec::load_model(path);
  const auto report = std::visit(
      [&](const auto& m) { return sylvec::evaluate_wordsim(m, dataset); }, model);
  std::printf("%.6f\t%zu\t%zu\n", report.pearson_r, report.pairs_used, report.pairs_skipped);
  return 0;
}

int cmd_pca_pairs(Flags& flags) {
  std::optional<std::string> model_path, pairs_path, out_path;
  std::string_view flag;
  while (flags.next(flag)) {
    if (flag == "--model") model_path = std::string(flags.value(flag));
    else if (flag == "--pairs") pairs_path = std::string(flags.value(flag));
    else if (flag == "--out") out_path = std::string(flags.value(flag));
    else throw UsageError("unknown flag " + std::string(flag));
  }
  const std::string path = require(model_path, "--model");
  const auto pairs = sylvec::load_postposition_pairs(require(pairs_path, "--pairs"));
  const std::string out = require(out_path, "--out");

  const sylvec::AnyModel model = sylvec::load_model(path);
  const auto report = std::visit(
      [&](const auto& m) { return sylvec::postposition_cluster_report(m, pairs); }, model);

  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (!f) throw sylvec::IoError("cannot open file for writing: " + out);
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    std::fprintf(f, "%s\t%.6f\t%.6f\n", report.labels[i].c_str(),
                 report.projection.coordinates[i][0], report.projection.coordinates[i][1]);
  }
  std::fprintf(f, "#parallelism\t%.6f\n", report.parallelism);
  if (std::fclose(f) != 0) throw sylvec::IoError("write failed: " + out);
  return 0;
}

int cmd_export(Flags& flags) {
  std::optional<std::string> model_path, out_path;
  std::string_view flag;
  while (flags.next(flag)) {
    if (flag == "--model") model_path = std::string(flags.value(flag));
    else if (flag == "--out") out_path = std::string(flags.value(flag));
    else throw UsageError("unknown flag " + std::string(flag));
  }
  const std::string path = require(model_path, "--model");
  const std::string out = require(out_path, "--out");

  const sylvec::AnyModel model = sylvec::load_model(path);
  std::visit([&](const auto& m) { sylvec::export_text_embeddings(m, out); }, model);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage(stderr);
    return 2;
  }
  const std::string_view command = argv[1];
  Flags flags(argc - 2, argv + 2);
  try {
    if (command == "train") return cmd_train(flags);
    if (command == "nn") return cmd_nn(flags);
    if (command == "eval-sim") return cmd_eval_sim(flags);
    if (command == "pca-pairs") return cmd_pca_pairs(flags);
    if (command == "export") return cmd_export(flags);
    if (command == "--help" || command == "-h" || command == "help") {
      print_usage(stdout);
      return 0;
    }
    std::fprintf(stderr, "unknown command '%s'\n", std::string(command).c_str());
    print_usage(stderr);
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    print_usage(stderr);
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
