#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cookiescope/dom/dom_model.h"

namespace cookiescope::corpus {

enum class Category { kDetection, kAccept, kReject, kSettings };

std::string_view to_string(Category category);
std::optional<Category> category_from_string(std::string_view text);

// English plus the eleven translation targets.
inline constexpr std::string_view kLanguages[] = {
    "en", "de", "sv", "es", "it", "pt", "zh", "ru", "ja", "fr", "tr", "fa"};

bool is_known_language(std::string_view code);

struct CorpusEntry {
  std::string phrase;      // as written in the file (whitespace-collapsed)
  std::string normalized;  // normalize_for_match(phrase)
  std::string language;
  Category category = Category::kDetection;
  // Added beyond the reference corpus; dropped by parity loads.
  bool supplement = false;
  std::size_t line = 0;
};

class CategorySet {
 public:
  CategorySet() = default;
  CategorySet(std::initializer_list<Category> categories) {
    for (Category c : categories) bits_ |= bit(c);
  }
  static CategorySet interaction() {
    return {Category::kAccept, Category::kReject, Category::kSettings};
  }
  bool contains(Category c) const { return (bits_ & bit(c)) != 0; }

 private:
  static unsigned bit(Category c) { return 1u << static_cast<unsigned>(c); }
  unsigned bits_ = 0;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Corpus {
 public:
  Corpus() = default;
  // Validates: non-empty, known languages, no duplicate
  // (phrase, language, category). Throws CorpusError.
  explicit Corpus(std::vector<CorpusEntry> entries);

  const std::vector<CorpusEntry>& entries() const { return entries_; }
  std::vector<const CorpusEntry*> detection_words() const;
  std::vector<const CorpusEntry*> interaction_words() const;
  std::size_t count(Category category) const;

 private:
  std::vector<CorpusEntry> entries_;
};

struct LoadOptions {
  bool include_supplement = false;
};

// Tab-separated: phrase, language, category, optional flags ("supplement").
// Blank lines and lines starting with '#' are ignored.
Corpus parse_corpus(std::string_view text, LoadOptions options = {});
Corpus load_corpus(const std::filesystem::path& path, LoadOptions options = {});

struct PhraseMatch {
  std::string phrase;  // corpus spelling
  Category category = Category::kDetection;
  bool operator==(const PhraseMatch&) const = default;
};

// Every corpus phrase in `categories` occurring as a substring of the
// normalized text, each (phrase, category) once, longest phrase first.
std::vector<PhraseMatch> match_text(std::string_view text, const Corpus& corpus,
                                    CategorySet categories);

struct SpanMatch {
  const CorpusEntry* entry;
  std::size_t begin;  // byte offsets into the normalized text
  std::size_t end;
};

// All occurrences, with the ones lying inside a strictly longer occurrence
// removed ("accept" inside "accept only necessary").
std::vector<SpanMatch> maximal_matches(std::string_view normalized_text,
                                       const Corpus& corpus,
                                       CategorySet categories);

struct WordMatch {
  dom::NodeId node_id = 0;
  std::string phrase;
  Category category = Category::kDetection;
  bool operator==(const WordMatch&) const = default;
};

}  // namespace cookiescope::corpus
