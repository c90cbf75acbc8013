#include "sylvec/model_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <span>

namespace sylvec {

static_assert(std::endian::native == std::endian::little,
              "model files are little-endian; big-endian hosts are unsupported");
static_assert(std::numeric_limits<float>::is_iec559);

namespace {

struct Writer {
  std::ofstream out;
  explicit Writer(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw IoError("cannot open file for writing: " + path);
  }
  void bytes(const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!out) throw IoError("write failed");
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void u64(std::uint64_t v) { bytes(&v, 8); }
  void f32(float v) { bytes(&v, 4); }
  void f64(double v) { bytes(&v, 8); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
};

struct Reader {
  std::ifstream in;
  explicit Reader(const std::string& path) : in(path, std::ios::binary) {
    if (!in) throw IoError("cannot open model file: " + path);
  }
  void bytes(void* p, std::size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n))
      throw IoError("model file is truncated");
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    bytes(&v, 4);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    bytes(&v, 8);
    return v;
  }
  float f32() {
    float v;
    bytes(&v, 4);
    return v;
  }
  double f64() {
    double v;
    bytes(&v, 8);
    return v;
  }
  std::string str() {
    const std::uint32_t n = u32();
    if (n > (1u << 20)) throw IoError("model file is corrupt: oversized string");
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }
};

// Tensors are shape-prefixed and row-major in the file; in memory the last
// axis of each layout below is the contiguous one, so writes permute.

void write_tensor_header(Writer& w, std::span<const std::uint32_t> dims) {
  w.u32(static_cast<std::uint32_t>(dims.size()));
  for (std::uint32_t d : dims) w.u32(d);
}

void expect_tensor_header(Reader& r, std::span<const std::uint32_t> dims) {
  if (r.u32() != dims.size()) throw IoError("model file is corrupt: unexpected tensor rank");
  for (std::uint32_t d : dims) {
    if (r.u32() != d) throw IoError("model file is corrupt: unexpected tensor shape");
  }
}

// Q is stored column-per-syllable in memory; file shape [d, inventory].
void write_q(Writer& w, const ComposerParams& p) {
  write_tensor_header(w, std::array<std::uint32_t, 2>{static_cast<std::uint32_t>(p.d),
                                                      p.inventory_size});
  for (int r = 0; r < p.d; ++r)
    for (std::uint32_t s = 0; s < p.inventory_size; ++s)
      w.f32(p.q[static_cast<std::size_t>(s) * p.d + r]);
}

void read_q(Reader& r, ComposerParams& p) {
  expect_tensor_header(r, std::array<std::uint32_t, 2>{static_cast<std::uint32_t>(p.d),
                                                       p.inventory_size});
  p.q.assign(static_cast<std::size_t>(p.inventory_size) * p.d, 0.0f);
  for (int row = 0; row < p.d; ++row)
    for (std::uint32_t s = 0; s < p.inventory_size; ++s)
      p.q[static_cast<std::size_t>(s) * p.d + row] = r.f32();
}

// Filter banks: memory layout [(j * w + c) * d + r]; file shape [count, d, w].
void write_bank(Writer& w, const FilterBank& bank, int d) {
  write_tensor_header(w, std::array<std::uint32_t, 3>{static_cast<std::uint32_t>(bank.count),
                                                      static_cast<std::uint32_t>(d),
                                                      static_cast<std::uint32_t>(bank.width)});
  for (int j = 0; j < bank.count; ++j)
    for (int row = 0; row < d; ++row)
      for (int c = 0; c < bank.width; ++c)
        w.f32(bank.weights[(static_cast<std::size_t>(j) * bank.width + c) * d + row]);
  write_tensor_header(w, std::array<std::uint32_t, 1>{static_cast<std::uint32_t>(bank.count)});
  for (float b : bank.biases) w.f32(b);
}

void read_bank(Reader& r, FilterBank& bank, int d) {
  expect_tensor_header(r, std::array<std::uint32_t, 3>{static_cast<std::uint32_t>(bank.count),
                                                       static_cast<std::uint32_t>(d),
                                                       static_cast<std::uint32_t>(bank.width)});
  bank.weights.assign(static_cast<std::size_t>(bank.count) * bank.width * d, 0.0f);
  for (int j = 0; j < bank.count; ++j)
    for (int row = 0; row < d; ++row)
      for (int c = 0; c < bank.width; ++c)
        bank.weights[(static_cast<std::size_t>(j) * bank.width + c) * d + row] = r.f32();
  expect_tensor_header(r, std::array<std::uint32_t, 1>{static_cast<std::uint32_t>(bank.count)});
  bank.biases.resize(bank.count);
  for (float& b : bank.biases) b = r.f32();
}

// Embedding tables: memory column-per-word; file shape [dim, columns].
void write_table(Writer& w, const EmbeddingTable& t) {
  write_tensor_header(w, std::array<std::uint32_t, 2>{static_cast<std::uint32_t>(t.dim),
                                                      t.columns});
  for (int row = 0; row < t.dim; ++row)
    for (std::uint32_t c = 0; c < t.columns; ++c)
      w.f32(t.values[static_cast<std::size_t>(c) * t.dim + row]);
}

void read_table(Reader& r, EmbeddingTable& t, int dim, std::uint32_t columns) {
  expect_tensor_header(r, std::array<std::uint32_t, 2>{static_cast<std::uint32_t>(dim), columns});
  t.dim = dim;
  t.columns = columns;
  t.values.assign(static_cast<std::size_t>(dim) * columns, 0.0f);
  for (int row = 0; row < dim; ++row)
    for (std::uint32_t c = 0; c < columns; ++c)
      t.values[static_cast<std::size_t>(c) * dim + row] = r.f32();
}

void write_config(Writer& w, const TrainConfig& c) {
  w.u32(static_cast<std::uint32_t>(c.syllable_dim));
  w.u32(static_cast<std::uint32_t>(c.widths.size()));
  for (std::size_t i = 0; i < c.widths.size(); ++i) {
    w.u32(static_cast<std::uint32_t>(c.widths[i]));
    w.u32(static_cast<std::uint32_t>(c.filter_counts[i]));
  }
  w.u32(static_cast<std::uint32_t>(c.window));
  w.u32(static_cast<std::uint32_t>(c.negatives));
  w.u32(static_cast<std::uint32_t>(c.epochs));
  w.f64(c.initial_lr);
  w.f64(c.min_lr);
  w.u64(c.min_count);
  w.f64(c.unigram_power);
  w.u64(c.seed);
  w.u8(c.dynamic_window ? 1 : 0);
  w.u8(c.lowercase ? 1 : 0);
  w.f64(c.subsample);
}

TrainConfig read_config(Reader& r) {
  TrainConfig c;
  c.syllable_dim = static_cast<int>(r.u32());
  const std::uint32_t n_widths = r.u32();
  if (n_widths == 0 || n_widths > 64) throw IoError("model file is corrupt: bad width count");
  c.widths.resize(n_widths);
  c.filter_counts.resize(n_widths);
  for (std::uint32_t i = 0; i < n_widths; ++i) {
    c.widths[i] = static_cast<int>(r.u32());
    c.filter_counts[i] = static_cast<int>(r.u32());
  }
  c.window = static_cast<int>(r.u32());
  c.negatives = static_cast<int>(r.u32());
  c.epochs = static_cast<int>(r.u32());
  c.initial_lr = r.f64();
  c.min_lr = r.f64();
  c.min_count = r.u64();
  c.unigram_power = r.f64();
  c.seed = r.u64();
  c.dynamic_window = r.u8() != 0;
  c.lowercase = r.u8() != 0;
  c.subsample = r.f64();
  return c;
}

void write_vocab(Writer& w, const Vocabulary& v) {
  w.u64(v.total_tokens);
  w.u32(static_cast<std::uint32_t>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    w.str(v.id_to_word[i]);
    w.u64(v.counts[i]);
  }
}

// Words and counts come from the file; maps and syllable decompositions are
// rebuilt (they are deterministic functions of the word list).
Vocabulary read_vocab(Reader& r) {
  Vocabulary v;
  v.total_tokens = r.u64();
  const std::uint32_t n = r.u32();
  if (n == 0) throw IoError("model file is corrupt: empty vocabulary");
  v.id_to_word.reserve(n);
  v.counts.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string word = r.str();
    if (word.empty()) throw IoError("model file is corrupt: empty word");
    v.word_to_id.emplace(word, i);
    v.id_to_word.push_back(std::move(word));
    v.counts.push_back(r.u64());
  }
  if (v.word_to_id.size() != v.id_to_word.size())
    throw IoError("model file is corrupt: duplicate vocabulary words");
  return v;
}

void write_inventory(Writer& w, const SyllableInventory& inv) {
  w.u32(static_cast<std::uint32_t>(inv.size()));
  for (std::size_t i = 1; i < inv.size(); ++i)
    w.u32(static_cast<std::uint32_t>(inv.id_to_syllable[i]));
}

SyllableInventory read_inventory(Reader& r) {
  SyllableInventory inv;
  const std::uint32_t n = r.u32();
  if (n == 0) throw IoError("model file is corrupt: empty inventory");
  inv.id_to_syllable.reserve(n);
  inv.id_to_syllable.push_back(U'\0');
  for (std::uint32_t i = 1; i < n; ++i) {
    const char32_t c = static_cast<char32_t>(r.u32());
    if (!inv.syllable_to_id.emplace(c, i).second)
      throw IoError("model file is corrupt: duplicate inventory syllable");
    inv.id_to_syllable.push_back(c);
  }
  return inv;
}

void fill_decompositions(Vocabulary& vocab, const SyllableInventory& inv) {
  vocab.syllable_ids.clear();
  vocab.syllable_ids.reserve(vocab.size());
  for (const auto& word : vocab.id_to_word) {
    try {
      vocab.syllable_ids.push_back(syllable_ids_for(inv, word));
    } catch (const UnknownSyllableError&) {
      throw IoError("model file is inconsistent: vocabulary word '" + word +
                    "' has a syllable outside the stored inventory");
    }
  }
}

}  // namespace

void save_model(const Model& model, const std::string& path) {
  Writer w(path);
  w.bytes(kModelMagic, sizeof(kModelMagic) - 1);
  w.u8(static_cast<std::uint8_t>(ModelKind::syllable));
  write_config(w, model.config);
  write_vocab(w, model.vocab);
  write_inventory(w, model.inventory);
  write_q(w, model.params);
  for (const auto& bank : model.params.banks) write_bank(w, bank, model.params.d);
  write_table(w, model.output);
}

void save_model(const BaselineModel& model, const std::string& path) {
  Writer w(path);
  w.bytes(kModelMagic, sizeof(kModelMagic) - 1);
  w.u8(static_cast<std::uint8_t>(ModelKind::baseline));
  write_config(w, model.config);
  write_vocab(w, model.vocab);
  write_table(w, model.input);
  write_table(w, model.output);
}

AnyModel load_model(const std::string& path) {
  Reader r(path);
  char magic[sizeof(kModelMagic) - 1];
  r.bytes(magic, sizeof magic);
  if (std::memcmp(magic, kModelMagic, sizeof magic) != 0)
    throw IoError("not a model file (bad magic): " + path);
  const std::uint8_t kind = r.u8();
  if (kind != static_cast<std::uint8_t>(ModelKind::syllable) &&
      kind != static_cast<std::uint8_t>(ModelKind::baseline))
    throw IoError("model file has unknown kind tag " + std::to_string(kind));

  TrainConfig config = read_config(r);
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw IoError("model file is corrupt: " + std::string(e.what()));
  }
  Vocabulary vocab = read_vocab(r);

  if (kind == static_cast<std::uint8_t>(ModelKind::syllable)) {
    Model m;
    m.config = std::move(config);
    m.vocab = std::move(vocab);
    m.inventory = read_inventory(r);
    fill_decompositions(m.vocab, m.inventory);
    m.params.d = m.config.syllable_dim;
    m.params.inventory_size = static_cast<std::uint32_t>(m.inventory.size());
    read_q(r, m.params);
    for (std::size_t i = 0; i < m.config.widths.size(); ++i) {
      FilterBank bank;
      bank.width = m.config.widths[i];
      bank.count = m.config.filter_counts[i];
      read_bank(r, bank, m.params.d);
      m.params.banks.push_back(std::move(bank));
    }
    read_table(r, m.output, m.config.repr_dim(), static_cast<std::uint32_t>(m.vocab.size()));
    return m;
  }

  BaselineModel m;
  m.config = std::move(config);
  m.vocab = std::move(vocab);
  {
    const SyllableInventory inv = build_syllable_inventory(m.vocab);
    fill_decompositions(m.vocab, inv);
  }
  const int h = m.config.repr_dim();
  read_table(r, m.input, h, static_cast<std::uint32_t>(m.vocab.size()));
  read_table(r, m.output, h, static_cast<std::uint32_t>(m.vocab.size()));
  return m;
}

namespace {

void export_rows(const std::string& path, std::size_t vocab_size, int h,
                 const std::vector<std::string>& words,
                 const std::function<void(std::size_t, std::vector<double>&)>& fill) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) throw IoError("cannot open file for writing: " + path);
  std::fprintf(out, "%zu %d\n", vocab_size, h);
  std::vector<double> vec;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    fill(i, vec);
    std::fputs(words[i].c_str(), out);
    for (double v : vec) std::fprintf(out, " %.6f", v);
    std::fputc('\n', out);
  }
  if (std::fclose(out) != 0) throw IoError("write failed: " + path);
}

}  // namespace

void export_text_embeddings(const Model& model, const std::string& path) {
  WordRepr repr;
  export_rows(path, model.vocab.size(), model.params.repr_dim(), model.vocab.id_to_word,
              [&](std::size_t i, std::vector<double>& vec) {
                compose_word(model.params, model.vocab.syllable_ids[i], repr);
                vec = repr.values;
              });
}

void export_text_embeddings(const BaselineModel& model, const std::string& path) {
  export_rows(path, model.vocab.size(), model.input.dim, model.vocab.id_to_word,
              [&](std::size_t i, std::vector<double>& vec) {
                const auto col = model.input.col(static_cast<WordId>(i));
                vec.assign(col.begin(), col.end());
              });
}

}  // namespace sylvec
