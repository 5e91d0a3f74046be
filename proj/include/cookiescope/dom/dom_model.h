#pragma once

// Serialized render tree captured by the in-page probe, plus the element
// eligibility predicates every banner heuristic is built on.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cookiescope::dom {

using NodeId = std::int64_t;

// Sequence of iframe node ids leading from the main document to a nested
// frame document. Empty means the main document.
using FramePath = std::vector<NodeId>;

enum class Position { kStatic, kRelative, kAbsolute, kFixed, kSticky };

std::string_view to_string(Position position);
std::optional<Position> position_from_string(std::string_view text);

// Computed z-index; std::nullopt stands for "auto".
using ZIndex = std::optional<int>;

struct BoundingBox {
  double x = 0;
  double y = 0;
  double width = 0;
  double height = 0;

  double area() const { return width * height; }
  bool operator==(const BoundingBox&) const = default;
};

struct Viewport {
  double width = 0;
  double height = 0;
  bool operator==(const Viewport&) const = default;
};

struct DomSnapshot;

struct DomNode {
  NodeId node_id = 0;
  std::string tag;        // lowercase element name
  std::string own_text;   // direct text children only, whitespace-collapsed
  std::string attr_text;  // title / aria-label / value
  bool display_none = false;
  bool visibility_hidden = false;
  double opacity = 1.0;
  BoundingBox bbox;
  ZIndex z_index;
  Position position = Position::kStatic;
  bool is_scripted_text = false;
  // Element has a click listener attached (buttons built from <div> etc.).
  bool has_click_handler = false;
  // Resolved absolute URL, anchors only.
  std::optional<std::string> href;
  std::vector<DomNode> children;
  // Present iff tag == "iframe" and the frame document was readable.
  std::shared_ptr<const DomSnapshot> iframe_doc;

  bool operator==(const DomNode& other) const;
};

struct DomSnapshot {
  DomNode root;
  Viewport viewport;
  std::string url;
  std::string captured_at;

  bool operator==(const DomSnapshot& other) const;
};

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws SnapshotError when a snapshot (or any nested frame document)
// breaks the structural invariants: duplicate ids within a document,
// negative box sizes, iframe_doc on a non-iframe, empty viewport, a root
// that is neither <html> nor <body>.
void validate(const DomSnapshot& snapshot);

// Read-only index over one document (not its nested frames) giving parent
// links and document order. Holds pointers into the snapshot, which must
// outlive the view.
class DocumentView {
 public:
  explicit DocumentView(const DomSnapshot& snapshot);

  const DomSnapshot& snapshot() const { return *snapshot_; }
  const Viewport& viewport() const { return snapshot_->viewport; }

  const DomNode* find(NodeId id) const;
  const DomNode& node(NodeId id) const;
  // nullptr for the root.
  const DomNode* parent(NodeId id) const;
  // Pre-order traversal of the whole document.
  const std::vector<const DomNode*>& document_order() const { return order_; }
  std::size_t order_index(NodeId id) const;

  bool is_ancestor_or_self(NodeId ancestor, NodeId descendant) const;
  // The <body> element: the root itself or a direct child of <html>.
  const DomNode* body() const;

 private:
  struct Entry {
    const DomNode* node;
    const DomNode* parent;
    std::size_t order;
  };
  const DomSnapshot* snapshot_;
  std::unordered_map<NodeId, Entry> index_;
  std::vector<const DomNode*> order_;
};

// Resolves a frame path to the nested document, or nullptr if any hop is
// missing or not an iframe with a captured document.
const DomSnapshot* resolve_frame(const DomSnapshot& snapshot,
                                 const FramePath& frame_path);

bool is_visible(const DomNode& node, const Viewport& viewport);

// Own z-index unless "auto"; otherwise the z-index of the nearest
// non-static ancestor that has one; otherwise "auto".
ZIndex effective_z_index(const DocumentView& view, NodeId id);

// A node that may carry banner words: visible, not stacked behind the page
// (negative effective z-index), not script text and not inside a <table>.
bool is_banner_word_candidate(const DocumentView& view, NodeId id);

}  // namespace cookiescope::dom
