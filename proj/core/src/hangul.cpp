#include "sylvec/hangul.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sylvec {

bool is_unicode_whitespace(char32_t c) {
  switch (c) {
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case U' ':
    case U'':  // next line
    case U' ':  // no-break space
    case U' ':
    case U' ':
    case U' ':
    case U' ':
    case U' ':
    case U'　':  // ideographic space
      return true;
    default:
      return c >= U' ' && c <= U' ';
  }
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  auto fail = [&](std::size_t at) -> void {
    throw InputError("invalid UTF-8 at byte offset " + std::to_string(at));
  };
  while (i < text.size()) {
    const unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      fail(i);
    }
    if (i + len > text.size()) fail(i);
    for (std::size_t j = 1; j < len; ++j) {
      const unsigned char b = static_cast<unsigned char>(text[i + j]);
      if ((b & 0xC0) != 0x80) fail(i + j);
      cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong encodings, surrogates, and out-of-range scalars are malformed.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
      fail(i);
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail(i);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

std::string encode_utf8(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size() * 3);
  for (char32_t c : scalars) out += encode_utf8(c);
  return out;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  const std::u32string scalars = decode_utf8(line);
  std::u32string current;
  for (char32_t c : scalars) {
    if (is_unicode_whitespace(c)) {
      if (!current.empty()) {
        tokens.push_back(encode_utf8(current));
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(encode_utf8(current));
  return tokens;
}

std::u32string decompose_syllables(std::string_view word) {
  return decode_utf8(word);
}

namespace {

char32_t to_lower_ascii(char32_t c) {
  return (c >= U'A' && c <= U'Z') ? c + (U'a' - U'A') : c;
}

std::string lowercase_token(const std::string& token) {
  std::u32string scalars = decode_utf8(token);
  for (char32_t& c : scalars) c = to_lower_ascii(c);
  return encode_utf8(scalars);
}

// Inventory from already-decomposed words, first occurrence by ascending
// word id. Shared by build_syllable_inventory and the vocab builder so the
// precomputed syllable ids always agree with the public inventory.
SyllableInventory inventory_from_decompositions(const std::vector<std::u32string>& words) {
  SyllableInventory inv;
  inv.id_to_syllable.push_back(U'\0');  // PAD
  for (const auto& scalars : words) {
    for (char32_t c : scalars) {
      if (inv.syllable_to_id.emplace(c, static_cast<SyllableId>(inv.id_to_syllable.size()))
              .second) {
        inv.id_to_syllable.push_back(c);
      }
    }
  }
  return inv;
}

Vocabulary build_vocab_from_stream(std::istream& in, std::uint64_t min_count, bool lowercase) {
  struct Entry {
    std::uint64_t count = 0;
    std::uint64_t first_seen = 0;
  };
  std::unordered_map<std::string, Entry> table;
  std::uint64_t order = 0;

  std::string line;
  while (std::getline(in, line)) {
    for (auto& token : tokenize(line)) {
      if (lowercase) token = lowercase_token(token);
      auto [it, inserted] = table.try_emplace(std::move(token));
      if (inserted) it->second.first_seen = order++;
      it->second.count++;
    }
  }

  std::vector<std::pair<const std::string*, const Entry*>> retained;
  retained.reserve(table.size());
  for (const auto& [word, entry] : table) {
    if (entry.count >= min_count) retained.emplace_back(&word, &entry);
  }
  if (retained.empty())
    throw ConfigError("no token reaches min_count " + std::to_string(min_count) +
                      "; vocabulary is empty");
  std::sort(retained.begin(), retained.end(), [](const auto& a, const auto& b) {
    if (a.second->count != b.second->count) return a.second->count > b.second->count;
    return a.second->first_seen < b.second->first_seen;
  });

  Vocabulary vocab;
  vocab.id_to_word.reserve(retained.size());
  vocab.counts.reserve(retained.size());
  std::vector<std::u32string> decomposed;
  decomposed.reserve(retained.size());
  for (const auto& [word, entry] : retained) {
    vocab.word_to_id.emplace(*word, static_cast<WordId>(vocab.id_to_word.size()));
    vocab.id_to_word.push_back(*word);
    vocab.counts.push_back(entry->count);
    vocab.total_tokens += entry->count;
    decomposed.push_back(decompose_syllables(*word));
  }

  const SyllableInventory inv = inventory_from_decompositions(decomposed);
  vocab.syllable_ids.reserve(decomposed.size());
  for (const auto& scalars : decomposed) {
    std::vector<SyllableId> ids;
    ids.reserve(scalars.size());
    for (char32_t c : scalars) ids.push_back(inv.syllable_to_id.at(c));
    vocab.syllable_ids.push_back(std::move(ids));
  }
  return vocab;
}

}  // namespace

Vocabulary build_vocab(const std::string& corpus_path, std::uint64_t min_count, bool lowercase) {
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + corpus_path);
  return build_vocab_from_stream(in, min_count, lowercase);
}

Vocabulary build_vocab_from_text(std::string_view corpus_text, std::uint64_t min_count,
                                 bool lowercase) {
  std::istringstream in{std::string(corpus_text)};
  return build_vocab_from_stream(in, min_count, lowercase);
}

SyllableInventory build_syllable_inventory(const Vocabulary& vocab) {
  if (vocab.size() == 0) throw ConfigError("cannot build an inventory from an empty vocabulary");
  std::vector<std::u32string> decomposed;
  decomposed.reserve(vocab.size());
  for (const auto& word : vocab.id_to_word) decomposed.push_back(decompose_syllables(word));
  return inventory_from_decompositions(decomposed);
}

std::vector<SyllableId> syllable_ids_for(const SyllableInventory& inventory,
                                         std::string_view word) {
  const std::u32string scalars = decompose_syllables(word);
  if (scalars.empty()) throw InputError("cannot decompose an empty word");
  std::vector<SyllableId> ids;
  ids.reserve(scalars.size());
  for (char32_t c : scalars) {
    const SyllableId sid = inventory.find(c);
    if (sid == SyllableInventory::kPadId) {
      char hex[16];
      std::snprintf(hex, sizeof hex, "%04X", static_cast<unsigned>(c));
      throw UnknownSyllableError(
          "unknown syllable '" + encode_utf8(c) + "' (U+" + hex + ")", c);
    }
    ids.push_back(sid);
  }
  return ids;
}

}  // namespace sylvec
