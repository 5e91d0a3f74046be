#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cookiescope/corpus/corpus.h"
#include "cookiescope/dom/dom_model.h"

namespace cookiescope::engine {

struct BannerFinding {
  dom::NodeId banner_node = 0;
  dom::NodeId anchor_node = 0;
  std::vector<corpus::WordMatch> matched_words;
  dom::FramePath frame_path;
  int attempt_index = 0;

  bool operator==(const BannerFinding&) const = default;
};

// Upward anchor search from the first word-bearing candidate, downward
// descent to the most specific element still holding every candidate under
// the anchor, then the same inside visible iframes (document order, nested
// frames depth first) when the main document has no candidate.
//
// The anchor is the nearest ancestor-or-self whose own z-index is positive
// or whose position is fixed; with none, <body>. Throws dom::SnapshotError
// when the main document has no <body>.
std::optional<BannerFinding> detect_banner(const dom::DomSnapshot& snapshot,
                                           const corpus::Corpus& corpus);

// Empty when the finding satisfies the containment invariants against the
// snapshot; otherwise a description of the first violation.
std::optional<std::string> check_finding(const dom::DomSnapshot& snapshot,
                                         const BannerFinding& finding);

}  // namespace cookiescope::engine
