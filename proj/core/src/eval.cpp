#include "sylvec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "sylvec/rng.hpp"

namespace sylvec {

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InputError("cosine needs vectors of equal length");
  if (u.empty()) throw InputError("cosine is undefined for empty vectors");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw EvalError("cosine is undefined for a zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InputError("pearson needs sequences of equal length");
  const std::size_t n = xs.size();
  if (n < 2) throw EvalError("pearson is undefined for fewer than 2 samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    cov += dx * dy;
    vx += dx * dx;
    vy += dy * dy;
  }
  if (vx == 0.0 || vy == 0.0) throw EvalError("pearson is undefined for a constant sequence");
  return std::clamp(cov / (std::sqrt(vx) * std::sqrt(vy)), -1.0, 1.0);
}

namespace {

// Exhaustive scoring against every vocabulary word. vector_of(id) must yield
// the word's representation; the query id (if any) is excluded.
template <typename VectorOf>
std::vector<Neighbor> top_k_neighbors(const Vocabulary& vocab, std::span<const double> query_vec,
                                      WordId exclude, int k, VectorOf&& vector_of) {
  if (k < 1) throw InputError("k must be >= 1");
  struct Scored {
    double sim;
    WordId id;
  };
  std::vector<Scored> scored;
  scored.reserve(vocab.size());
  for (WordId w = 0; w < vocab.size(); ++w) {
    if (w == exclude) continue;
    scored.push_back({cosine(query_vec, vector_of(w)), w});
  }
  const auto better = [](const Scored& a, const Scored& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return a.id < b.id;
  };
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(), better);

  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    out.push_back({vocab.id_to_word[scored[i].id], scored[i].sim});
  return out;
}

}  // namespace

std::vector<Neighbor> nearest_neighbors(const Model& model, std::string_view query, int k) {
  const std::vector<double> query_vec = word_vector(model, query);
  const WordId exclude = model.vocab.find(query);

  // Compose every candidate once.
  std::vector<WordRepr> reprs(model.vocab.size());
  for (WordId w = 0; w < model.vocab.size(); ++w)
    compose_word(model.params, model.vocab.syllable_ids[w], reprs[w]);
  return top_k_neighbors(model.vocab, query_vec, exclude, k, [&](WordId w) {
    return std::span<const double>(reprs[w].values);
  });
}

std::vector<Neighbor> nearest_neighbors(const BaselineModel& model, std::string_view query,
                                        int k) {
  const std::vector<double> query_vec = word_vector(model, query);
  const WordId exclude = model.vocab.find(query);
  std::vector<double> scratch(model.input.dim);
  return top_k_neighbors(model.vocab, query_vec, exclude, k, [&](WordId w) {
    const auto col = model.input.col(w);
    scratch.assign(col.begin(), col.end());
    return std::span<const double>(scratch);
  });
}

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && std::isfinite(out);
}

template <typename PerLine>
void for_each_data_line(std::string_view text, PerLine&& per_line) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty() && line.front() != '#') per_line(line, line_no);
    start = end + 1;
    if (end == text.size()) break;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<SimilarityPair> parse_similarity_pairs(std::string_view text) {
  std::vector<SimilarityPair> pairs;
  for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split_tabs(line);
    double score = 0.0;
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() ||
        !parse_double(fields[2], score)) {
      throw InputError("malformed similarity pair at line " + std::to_string(line_no) +
                       ": expected word_a<TAB>word_b<TAB>score");
    }
    pairs.push_back({fields[0], fields[1], score});
  });
  return pairs;
}

std::vector<SimilarityPair> load_similarity_pairs(const std::string& path) {
  return parse_similarity_pairs(read_file(path));
}

std::vector<PostpositionPair> parse_postposition_pairs(std::string_view text) {
  std::vector<PostpositionPair> pairs;
  for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw InputError("malformed pair at line " + std::to_string(line_no) +
                       ": expected word<TAB>word_with_postposition");
    }
    pairs.push_back({fields[0], fields[1]});
  });
  return pairs;
}

std::vector<PostpositionPair> load_postposition_pairs(const std::string& path) {
  return parse_postposition_pairs(read_file(path));
}

namespace {

// Shared evaluate_wordsim body; try_vector returns false to skip the word.
template <typename TryVector>
EvalReport wordsim_report(std::span<const SimilarityPair> dataset, TryVector&& try_vector) {
  if (dataset.empty()) throw InputError("similarity dataset is empty");
  EvalReport report;
  std::vector<double> human, cosines;
  std::vector<double> va, vb;
  for (const auto& pair : dataset) {
    if (!try_vector(pair.word_a, va) || !try_vector(pair.word_b, vb)) {
      ++report.pairs_skipped;
      continue;
    }
    human.push_back(pair.human_score);
    cosines.push_back(cosine(va, vb));
    ++report.pairs_used;
  }
  if (report.pairs_used < 2)
    throw EvalError("fewer than 2 usable pairs; cannot evaluate similarity");
  report.pearson_r = pearson(human, cosines);
  return report;
}

}  // namespace

EvalReport evaluate_wordsim(const Model& model, std::span<const SimilarityPair> dataset) {
  return wordsim_report(dataset, [&](const std::string& word, std::vector<double>& out) {
    try {
      out = word_vector(model, word);  // composes; OOV words included
      return true;
    } catch (const UnknownSyllableError&) {
      return false;
    }
  });
}

EvalReport evaluate_wordsim(const BaselineModel& model,
                            std::span<const SimilarityPair> dataset) {
  return wordsim_report(dataset, [&](const std::string& word, std::vector<double>& out) {
    try {
      out = word_vector(model, word);
      return true;
    } catch (const NoRepresentationError&) {
      return false;
    }
  });
}

namespace {

constexpr double kPcaTolerance = 1e-10;
constexpr int kPcaMaxIterations = 10000;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Any unit vector orthogonal to the found components; used when the deflated
// matrix is numerically zero (rank-deficient input).
std::vector<double> orthonormal_fallback(std::size_t dim,
                                         std::span<const std::vector<double>> found) {
  for (std::size_t axis = 0; axis < dim; ++axis) {
    std::vector<double> v(dim, 0.0);
    v[axis] = 1.0;
    for (const auto& u : found) {
      const double p = dot(v, u);
      for (std::size_t i = 0; i < dim; ++i) v[i] -= p * u[i];
    }
    const double n = norm(v);
    if (n > 1e-6) {
      for (double& x : v) x /= n;
      return v;
    }
  }
  throw NumericalError("could not construct an orthonormal completion");
}

}  // namespace

PcaProjection pca_project(const std::vector<std::vector<double>>& vectors) {
  const std::size_t n = vectors.size();
  if (n < 3) throw InputError("pca_project needs at least 3 vectors");
  const std::size_t dim = vectors[0].size();
  if (dim < 2) throw InputError("pca_project needs vectors of dimension >= 2");
  for (const auto& v : vectors) {
    if (v.size() != dim) throw InputError("pca_project needs vectors of equal length");
  }

  std::vector<double> mean(dim, 0.0);
  for (const auto& v : vectors)
    for (std::size_t i = 0; i < dim; ++i) mean[i] += v[i];
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<std::vector<double>> centered(n, std::vector<double>(dim));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < dim; ++i) centered[r][i] = vectors[r][i] - mean[i];

  // Sample covariance, denominator n - 1.
  std::vector<double> cov(dim * dim, 0.0);
  for (const auto& row : centered) {
    for (std::size_t a = 0; a < dim; ++a) {
      const double ra = row[a];
      for (std::size_t b = a; b < dim; ++b) cov[a * dim + b] += ra * row[b];
    }
  }
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      cov[a * dim + b] /= static_cast<double>(n - 1);
      cov[b * dim + a] = cov[a * dim + b];
    }

  auto apply_cov = [&](std::span<const double> v, std::vector<double>& out) {
    out.assign(dim, 0.0);
    for (std::size_t a = 0; a < dim; ++a) {
      const double* row = cov.data() + a * dim;
      double s = 0.0;
      for (std::size_t b = 0; b < dim; ++b) s += row[b] * v[b];
      out[a] = s;
    }
  };

  PcaProjection proj;
  std::vector<std::vector<double>> found;
  for (int comp = 0; comp < 2; ++comp) {
    // Deterministic pseudo-random start, orthogonalized against found components.
    Rng rng(0x9CA0FFEEULL + static_cast<std::uint64_t>(comp));
    std::vector<double> v(dim);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    for (const auto& u : found) {
      const double p = dot(v, u);
      for (std::size_t i = 0; i < dim; ++i) v[i] -= p * u[i];
    }
    {
      const double nv = norm(v);
      if (nv < 1e-12) {
        v = orthonormal_fallback(dim, found);
      } else {
        for (double& x : v) x /= nv;
      }
    }

    std::vector<double> w;
    bool converged = false;
    bool rank_deficient = false;
    for (int iter = 1; iter <= kPcaMaxIterations; ++iter) {
      apply_cov(v, w);
      for (const auto& u : found) {  // deflation
        const double p = dot(w, u);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= p * u[i];
      }
      const double nw = norm(w);
      if (nw < 1e-200) {
        rank_deficient = true;
        converged = true;
        break;
      }
      for (double& x : w) x /= nw;
      if (dot(w, v) < 0.0)
        for (double& x : w) x = -x;
      double delta = 0.0;
      for (std::size_t i = 0; i < dim; ++i) delta = std::max(delta, std::abs(w[i] - v[i]));
      v = w;
      if (delta < kPcaTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericalError("power iteration did not converge within " +
                           std::to_string(kPcaMaxIterations) + " iterations");
    }
    if (rank_deficient) v = orthonormal_fallback(dim, found);

    apply_cov(v, w);
    const double eigenvalue = std::max(dot(v, w), 0.0);

    // Sign convention: largest-magnitude entry positive.
    std::size_t best = 0;
    for (std::size_t i = 1; i < dim; ++i) {
      if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    if (v[best] < 0.0)
      for (double& x : v) x = -x;

    proj.components[comp] = v;
    proj.explained_variance[comp] = rank_deficient ? 0.0 : eigenvalue;
    found.push_back(proj.components[comp]);
  }

  proj.coordinates.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    proj.coordinates[r] = {dot(centered[r], proj.components[0]),
                           dot(centered[r], proj.components[1])};
  }
  return proj;
}

namespace {

template <typename VectorOf>
PostpositionReport cluster_report(std::span<const PostpositionPair> pairs, VectorOf&& vector_of) {
  if (pairs.size() < 2) throw InputError("postposition report needs at least 2 pairs");

  const std::size_t n = pairs.size();
  std::vector<std::vector<double>> all_vectors;
  all_vectors.reserve(2 * n);
  PostpositionReport report;
  report.labels.reserve(2 * n);
  for (const auto& p : pairs) {
    all_vectors.push_back(vector_of(p.word));
    report.labels.push_back(p.word);
  }
  for (const auto& p : pairs) {
    all_vectors.push_back(vector_of(p.combined));
    report.labels.push_back(p.combined);
  }

  std::vector<std::vector<double>> displacements;
  displacements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> delta(all_vectors[i].size());
    double norm2 = 0.0;
    for (std::size_t r = 0; r < delta.size(); ++r) {
      delta[r] = all_vectors[n + i][r] - all_vectors[i][r];
      norm2 += delta[r] * delta[r];
    }
    if (norm2 == 0.0) {
      ++report.pairs_degenerate;  // identical vectors: displacement undefined
    } else {
      displacements.push_back(std::move(delta));
    }
  }
  report.pairs_used = displacements.size();

  if (displacements.size() >= 2) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < displacements.size(); ++i) {
      for (std::size_t j = i + 1; j < displacements.size(); ++j) {
        sum += cosine(displacements[i], displacements[j]);
        ++count;
      }
    }
    report.parallelism = sum / static_cast<double>(count);
  } else {
    report.parallelism = std::numeric_limits<double>::quiet_NaN();
  }

  report.projection = pca_project(all_vectors);
  return report;
}

}  // namespace

PostpositionReport postposition_cluster_report(const Model& model,
                                               std::span<const PostpositionPair> pairs) {
  return cluster_report(pairs,
                        [&](const std::string& word) { return word_vector(model, word); });
}

PostpositionReport postposition_cluster_report(const BaselineModel& model,
                                               std::span<const PostpositionPair> pairs) {
  return cluster_report(pairs,
                        [&](const std::string& word) { return word_vector(model, word); });
}

}  // namespace sylvec
