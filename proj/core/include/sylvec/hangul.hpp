#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sylvec/errors.hpp"

namespace sylvec {

using WordId = std::uint32_t;
using SyllableId = std::uint32_t;

constexpr char32_t kHangulSyllableFirst = U'가';
constexpr char32_t kHangulSyllableLast = U'힣';

inline bool is_hangul_syllable(char32_t c) {
  return c >= kHangulSyllableFirst && c <= kHangulSyllableLast;
}

bool is_unicode_whitespace(char32_t c);

// Strict UTF-8; malformed sequences raise InputError with the byte offset.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view scalars);
std::string encode_utf8(char32_t scalar);

// Splits on any Unicode whitespace, drops empty segments, keeps order.
std::vector<std::string> tokenize(std::string_view line);

// A word as its Unicode scalars, in order. Precomposed Hangul syllables
// (U+AC00..U+D7A3) are the intended unit; any other scalar (Latin letters,
// digits, punctuation) passes through as a single atomic unit.
std::u32string decompose_syllables(std::string_view word);

// Syllable <-> dense id bijection. Id 0 is a reserved PAD entry that never
// comes out of decompose_syllables; its embedding is pinned to zero so padded
// convolution positions contribute nothing.
struct SyllableInventory {
  static constexpr SyllableId kPadId = 0;

  std::vector<char32_t> id_to_syllable;  // [0] is the PAD sentinel (U+0000)
  std::unordered_map<char32_t, SyllableId> syllable_to_id;  // non-PAD only

  std::size_t size() const { return id_to_syllable.size(); }

  // kPadId if absent.
  SyllableId find(char32_t syllable) const {
    auto it = syllable_to_id.find(syllable);
    return it == syllable_to_id.end() ? kPadId : it->second;
  }
};

struct Vocabulary {
  std::vector<std::string> id_to_word;  // descending count, ties by first occurrence
  std::unordered_map<std::string, WordId> word_to_id;
  std::vector<std::uint64_t> counts;
  std::uint64_t total_tokens = 0;  // sum of retained counts
  std::vector<std::vector<SyllableId>> syllable_ids;  // per word; never contains PAD

  std::size_t size() const { return id_to_word.size(); }

  // Returns size() when absent.
  WordId find(std::string_view word) const {
    auto it = word_to_id.find(std::string(word));
    return it == word_to_id.end() ? static_cast<WordId>(id_to_word.size())
                                  : it->second;
  }
  bool contains(std::string_view word) const { return find(word) < size(); }
};

// One pass over a newline-delimited UTF-8 corpus: counts whitespace tokens,
// keeps those with count >= min_count, assigns ids by descending count
// (first occurrence breaks ties) and precomputes syllable-id decompositions
// consistent with build_syllable_inventory of the result.
Vocabulary build_vocab(const std::string& corpus_path, std::uint64_t min_count,
                       bool lowercase = false);

// Same, from in-memory text (used heavily by tests).
Vocabulary build_vocab_from_text(std::string_view corpus_text, std::uint64_t min_count,
                                 bool lowercase = false);

// PAD plus the union of syllables over retained words, ids in first-occurrence
// order scanning words by ascending word id. Deterministic.
SyllableInventory build_syllable_inventory(const Vocabulary& vocab);

// Decomposes a word and maps through the inventory; throws UnknownSyllableError
// naming the first scalar the inventory does not contain. This is the shared
// path for in-vocabulary and out-of-vocabulary words.
std::vector<SyllableId> syllable_ids_for(const SyllableInventory& inventory,
                                         std::string_view word);

}  // namespace sylvec
