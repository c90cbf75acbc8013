#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sylvec/baseline.hpp"
#include "sylvec/trainer.hpp"

namespace sylvec {

// u.v / (|u| |v|), clamped to [-1, 1]. Zero vectors are undefined -> EvalError.
double cosine(std::span<const double> u, std::span<const double> v);

// Sample Pearson r. Undefined for length < 2 or a constant sequence -> EvalError.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct Neighbor {
  std::string word;
  double similarity;
};

// Top-k vocabulary words by cosine against the query's representation,
// descending, ties by ascending word id; the query itself is excluded when it
// is in-vocabulary. The syllable model composes the query (OOV included);
// the baseline looks it up and throws NoRepresentationError on OOV.
std::vector<Neighbor> nearest_neighbors(const Model& model, std::string_view query, int k);
std::vector<Neighbor> nearest_neighbors(const BaselineModel& model, std::string_view query,
                                        int k);

struct SimilarityPair {
  std::string word_a;
  std::string word_b;
  double human_score;
};

// UTF-8, one "word_a<TAB>word_b<TAB>score" per line; '#' lines and blank
// lines are ignored. Malformed lines raise InputError naming the line number.
std::vector<SimilarityPair> load_similarity_pairs(const std::string& path);
std::vector<SimilarityPair> parse_similarity_pairs(std::string_view text);

struct EvalReport {
  double pearson_r = 0.0;
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
};

// Pearson correlation between human scores and model cosines. The syllable
// model skips a pair only when a word contains a syllable outside the
// inventory; the baseline skips any pair with an OOV word. Fewer than two
// usable pairs -> EvalError.
EvalReport evaluate_wordsim(const Model& model, std::span<const SimilarityPair> dataset);
EvalReport evaluate_wordsim(const BaselineModel& model, std::span<const SimilarityPair> dataset);

struct PcaProjection {
  std::array<std::vector<double>, 2> components;      // orthonormal, length h
  std::vector<std::array<double, 2>> coordinates;     // one per input vector
  std::array<double, 2> explained_variance{0.0, 0.0}; // descending
};

// Top-2 principal components of the sample covariance by power iteration with
// deflation (tolerance 1e-10, at most 10000 iterations per component). Sign
// convention: each component's largest-magnitude entry is positive. Needs at
// least 3 vectors; non-convergence raises NumericalError with the iteration
// count.
PcaProjection pca_project(const std::vector<std::vector<double>>& vectors);

struct PostpositionPair {
  std::string word;
  std::string combined;  // word + postposition
};

// "word<TAB>word_with_postposition" per line, '#' and blank lines ignored.
std::vector<PostpositionPair> load_postposition_pairs(const std::string& path);
std::vector<PostpositionPair> parse_postposition_pairs(std::string_view text);

// Quantifies Figure-style parallel displacement: for each pair the
// displacement vec(combined) - vec(word), the mean pairwise cosine among
// displacements (zero displacements are excluded and counted), plus 2-D PCA
// coordinates of all 2N word vectors for plotting (base words first, then
// the combined forms, both in input order).
struct PostpositionReport {
  double parallelism = 0.0;
  std::size_t pairs_used = 0;
  std::size_t pairs_degenerate = 0;
  PcaProjection projection;
  std::vector<std::string> labels;  // 2N, aligned with projection.coordinates
};

PostpositionReport postposition_cluster_report(const Model& model,
                                               std::span<const PostpositionPair> pairs);
PostpositionReport postposition_cluster_report(const BaselineModel& model,
                                               std::span<const PostpositionPair> pairs);

}  // namespace sylvec
