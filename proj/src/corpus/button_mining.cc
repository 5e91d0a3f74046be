#include "cookiescope/corpus/button_mining.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cookiescope/corpus/text_normalize.h"

namespace cookiescope::corpus {

std::vector<MinedWord> mine_button_words(
    const std::vector<BannerObservation>& observations,
    unsigned min_share_percent) {
  if (observations.empty()) {
    throw std::invalid_argument("mine_button_words: no observations");
  }
  std::map<std::string, std::size_t> banners_per_language;
  std::map<std::pair<std::string, std::string>, std::size_t> presence;
  for (const BannerObservation& obs : observations) {
    if (obs.language.empty()) {
      throw std::invalid_argument("mine_button_words: observation without language");
    }
    ++banners_per_language[obs.language];
    std::set<std::string> words;
    for (const std::string& text : obs.button_texts) {
      for (std::string& token : word_tokens(normalize_for_match(text))) {
        words.insert(std::move(token));
      }
    }
    for (const std::string& word : words) ++presence[{obs.language, word}];
  }

  std::vector<MinedWord> out;
  for (const auto& [key, count] : presence) {
    const std::size_t total = banners_per_language.at(key.first);
    if (count * 100 < static_cast<std::size_t>(min_share_percent) * total) continue;
    out.push_back({key.second, key.first,
                   static_cast<double>(count) / static_cast<double>(total), count});
  }
  std::sort(out.begin(), out.end(), [](const MinedWord& a, const MinedWord& b) {
    if (a.language != b.language) return a.language < b.language;
    if (a.banners != b.banners) return a.banners > b.banners;
    return a.word < b.word;
  });
  return out;
}

}  // namespace cookiescope::corpus
