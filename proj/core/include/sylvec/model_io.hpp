#pragma once

#include <string>
#include <variant>

#include "sylvec/baseline.hpp"
#include "sylvec/trainer.hpp"

namespace sylvec {

// Binary model container, magic "SYLVEC1" followed by a kind tag, the
// configuration, vocabulary, syllable inventory (syllable kind only) and all
// parameter tensors as shape-prefixed row-major little-endian float32.
// save/load round-trips bit-exactly. Format details in the README.
inline constexpr char kModelMagic[] = "SYLVEC1";

enum class ModelKind : std::uint8_t { syllable = 0, baseline = 1 };

void save_model(const Model& model, const std::string& path);
void save_model(const BaselineModel& model, const std::string& path);

using AnyModel = std::variant<Model, BaselineModel>;
AnyModel load_model(const std::string& path);

// Classic text embedding format: "|V| h" header, then one "word v1 .. vh"
// line per word in vocabulary-id order, 6 decimal places. The syllable model
// exports composed representations; the baseline exports its input table.
void export_text_embeddings(const Model& model, const std::string& path);
void export_text_embeddings(const BaselineModel& model, const std::string& path);

}  // namespace sylvec
