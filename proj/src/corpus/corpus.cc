#include "cookiescope/corpus/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "cookiescope/corpus/text_normalize.h"

namespace cookiescope::corpus {

namespace {

constexpr std::pair<Category, std::string_view> kCategoryNames[] = {
    {Category::kDetection, "detection"},
    {Category::kAccept, "accept"},
    {Category::kReject, "reject"},
    {Category::kSettings, "settings"},
};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t codepoints(std::string_view utf8) {
  return static_cast<std::size_t>(std::count_if(
      utf8.begin(), utf8.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

}  // namespace

std::string_view to_string(Category category) {
  for (const auto& [value, name] : kCategoryNames) {
    if (value == category) return name;
  }
  return "detection";
}

std::optional<Category> category_from_string(std::string_view text) {
  for (const auto& [value, name] : kCategoryNames) {
    if (name == text) return value;
  }
  return std::nullopt;
}

bool is_known_language(std::string_view code) {
  return std::find(std::begin(kLanguages), std::end(kLanguages), code) !=
         std::end(kLanguages);
}

Corpus::Corpus(std::vector<CorpusEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw CorpusError("corpus is empty");
  std::set<std::tuple<std::string, std::string, Category>> seen;
  for (CorpusEntry& entry : entries_) {
    const std::string where = entry.line ? " (line " + std::to_string(entry.line) + ")" : "";
    entry.phrase = collapse_whitespace(entry.phrase);
    entry.normalized = normalize_for_match(entry.phrase);
    if (entry.normalized.empty()) {
      throw CorpusError("empty phrase" + where);
    }
    if (!is_known_language(entry.language)) {
      throw CorpusError("unknown language '" + entry.language + "' for '" +
                        entry.phrase + "'" + where);
    }
    if (!seen.emplace(entry.normalized, entry.language, entry.category).second) {
      throw CorpusError("duplicate entry '" + entry.phrase + "' " +
                        entry.language + "/" +
                        std::string(to_string(entry.category)) + where);
    }
  }
}

std::vector<const CorpusEntry*> Corpus::detection_words() const {
  std::vector<const CorpusEntry*> out;
  for (const CorpusEntry& e : entries_) {
    if (e.category == Category::kDetection) out.push_back(&e);
  }
  return out;
}

std::vector<const CorpusEntry*> Corpus::interaction_words() const {
  std::vector<const CorpusEntry*> out;
  for (const CorpusEntry& e : entries_) {
    if (e.category != Category::kDetection) out.push_back(&e);
  }
  return out;
}

std::size_t Corpus::count(Category category) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(),
                    [category](const CorpusEntry& e) { return e.category == category; }));
}

Corpus parse_corpus(std::string_view text, LoadOptions options) {
  std::vector<CorpusEntry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;

    std::vector<std::string_view> fields = split_tabs(line);
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() < 3 || fields.size() > 4) {
      throw CorpusError(where + ": expected phrase<TAB>language<TAB>category[<TAB>flags]");
    }
    auto category = category_from_string(trim(fields[2]));
    if (!category) {
      throw CorpusError(where + ": unknown category '" + std::string(trim(fields[2])) + "'");
    }
    CorpusEntry entry;
    entry.phrase = std::string(trim(fields[0]));
    entry.language = std::string(trim(fields[1]));
    entry.category = *category;
    entry.line = line_no;
    if (fields.size() == 4) {
      std::string_view flags = trim(fields[3]);
      if (flags == "supplement") {
        entry.supplement = true;
      } else if (!flags.empty()) {
        throw CorpusError(where + ": unknown flag '" + std::string(flags) + "'");
      }
    }
    if (entry.supplement && !options.include_supplement) continue;
    entries.push_back(std::move(entry));
  }
  return Corpus(std::move(entries));
}

Corpus load_corpus(const std::filesystem::path& path, LoadOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_corpus(buffer.str(), options);
  } catch (const CorpusError& e) {
    throw CorpusError(path.filename().string() + ": " + e.what());
  }
}

std::vector<PhraseMatch> match_text(std::string_view text, const Corpus& corpus,
                                    CategorySet categories) {
  const std::string normalized = normalize_for_match(text);
  std::vector<const CorpusEntry*> hits;
  for (const CorpusEntry& entry : corpus.entries()) {
    if (!categories.contains(entry.category)) continue;
    if (normalized.find(entry.normalized) != std::string::npos) hits.push_back(&entry);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const CorpusEntry* a, const CorpusEntry* b) {
    return codepoints(a->normalized) > codepoints(b->normalized);
  });
  std::vector<PhraseMatch> out;
  for (const CorpusEntry* entry : hits) {
    PhraseMatch m{entry->phrase, entry->category};
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  }
  return out;
}

std::vector<SpanMatch> maximal_matches(std::string_view normalized_text,
                                       const Corpus& corpus, CategorySet categories) {
  std::vector<SpanMatch> all;
  for (const CorpusEntry& entry : corpus.entries()) {
    if (!categories.contains(entry.category)) continue;
    for (std::size_t at = normalized_text.find(entry.normalized);
         at != std::string_view::npos;
         at = normalized_text.find(entry.normalized, at + 1)) {
      all.push_back({&entry, at, at + entry.normalized.size()});
    }
  }
  std::vector<SpanMatch> out;
  for (const SpanMatch& m : all) {
    const bool inside_longer = std::any_of(all.begin(), all.end(), [&m](const SpanMatch& o) {
      return o.begin <= m.begin && m.end <= o.end && (o.end - o.begin) > (m.end - m.begin);
    });
    if (!inside_longer) out.push_back(m);
  }
  return out;
}

}  // namespace cookiescope::corpus
