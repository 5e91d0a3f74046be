#include "cookiescope/dom/dom_model.h"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace cookiescope::dom {

namespace {

constexpr std::array<std::pair<Position, std::string_view>, 5> kPositionNames{{
    {Position::kStatic, "static"},
    {Position::kRelative, "relative"},
    {Position::kAbsolute, "absolute"},
    {Position::kFixed, "fixed"},
    {Position::kSticky, "sticky"},
}};

bool same_frame_doc(const std::shared_ptr<const DomSnapshot>& a,
                    const std::shared_ptr<const DomSnapshot>& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

void validate_document(const DomSnapshot& snapshot, const FramePath& path) {
  const auto where = [&path] {
    std::string out = "frame [";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(path[i]);
    }
    return out + "]";
  };
  if (snapshot.viewport.width <= 0 || snapshot.viewport.height <= 0) {
    throw SnapshotError("non-positive viewport in " + where());
  }
  if (snapshot.root.tag != "html" && snapshot.root.tag != "body") {
    throw SnapshotError("root must be <html> or <body>, got <" +
                        snapshot.root.tag + "> in " + where());
  }
  std::unordered_set<NodeId> seen;
  std::vector<const DomNode*> stack{&snapshot.root};
  while (!stack.empty()) {
    const DomNode* node = stack.back();
    stack.pop_back();
    if (!seen.insert(node->node_id).second) {
      throw SnapshotError("duplicate node_id " + std::to_string(node->node_id) +
                          " in " + where());
    }
    if (node->bbox.width < 0 || node->bbox.height < 0) {
      throw SnapshotError("negative bbox size on node " +
                          std::to_string(node->node_id));
    }
    if (node->opacity < 0 || node->opacity > 1) {
      throw SnapshotError("opacity outside [0,1] on node " +
                          std::to_string(node->node_id));
    }
    if (node->iframe_doc) {
      if (node->tag != "iframe") {
        throw SnapshotError("iframe_doc on <" + node->tag + "> node " +
                            std::to_string(node->node_id));
      }
      FramePath nested = path;
      nested.push_back(node->node_id);
      validate_document(*node->iframe_doc, nested);
    }
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
      stack.push_back(&*it);
    }
  }
}

}  // namespace

std::string_view to_string(Position position) {
  for (const auto& [value, name] : kPositionNames) {
    if (value == position) return name;
  }
  return "static";
}

std::optional<Position> position_from_string(std::string_view text) {
  for (const auto& [value, name] : kPositionNames) {
    if (name == text) return value;
  }
  return std::nullopt;
}

bool DomNode::operator==(const DomNode& other) const {
  return node_id == other.node_id && tag == other.tag &&
         own_text == other.own_text && attr_text == other.attr_text &&
         display_none == other.display_none &&
         visibility_hidden == other.visibility_hidden &&
         opacity == other.opacity && bbox == other.bbox &&
         z_index == other.z_index && position == other.position &&
         is_scripted_text == other.is_scripted_text &&
         has_click_handler == other.has_click_handler && href == other.href &&
         children == other.children &&
         same_frame_doc(iframe_doc, other.iframe_doc);
}

bool DomSnapshot::operator==(const DomSnapshot& other) const {
  return root == other.root && viewport == other.viewport &&
         url == other.url && captured_at == other.captured_at;
}

void validate(const DomSnapshot& snapshot) { validate_document(snapshot, {}); }

DocumentView::DocumentView(const DomSnapshot& snapshot) : snapshot_(&snapshot) {
  struct Frame {
    const DomNode* node;
    const DomNode* parent;
  };
  std::vector<Frame> stack{{&snapshot.root, nullptr}};
  while (!stack.empty()) {
    auto [node, parent] = stack.back();
    stack.pop_back();
    index_.emplace(node->node_id, Entry{node, parent, order_.size()});
    order_.push_back(node);
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
      stack.push_back({&*it, node});
    }
  }
}

const DomNode* DocumentView::find(NodeId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : it->second.node;
}

const DomNode& DocumentView::node(NodeId id) const {
  const DomNode* found = find(id);
  if (!found) throw SnapshotError("unknown node_id " + std::to_string(id));
  return *found;
}

const DomNode* DocumentView::parent(NodeId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : it->second.parent;
}

std::size_t DocumentView::order_index(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw SnapshotError("unknown node_id " + std::to_string(id));
  }
  return it->second.order;
}

bool DocumentView::is_ancestor_or_self(NodeId ancestor,
                                       NodeId descendant) const {
  for (const DomNode* cur = find(descendant); cur;
       cur = parent(cur->node_id)) {
    if (cur->node_id == ancestor) return true;
  }
  return false;
}

const DomNode* DocumentView::body() const {
  const DomNode& root = snapshot_->root;
  if (root.tag == "body") return &root;
  for (const DomNode& child : root.children) {
    if (child.tag == "body") return &child;
  }
  return nullptr;
}

const DomSnapshot* resolve_frame(const DomSnapshot& snapshot,
                                 const FramePath& frame_path) {
  const DomSnapshot* doc = &snapshot;
  for (NodeId hop : frame_path) {
    DocumentView view(*doc);
    const DomNode* frame = view.find(hop);
    if (!frame || frame->tag != "iframe" || !frame->iframe_doc) return nullptr;
    doc = frame->iframe_doc.get();
  }
  return doc;
}

bool is_visible(const DomNode& node, const Viewport& viewport) {
  if (node.display_none || node.visibility_hidden) return false;
  if (node.opacity <= 0) return false;
  if (node.bbox.area() <= 0) return false;
  const BoundingBox& b = node.bbox;
  // Strict overlap with the unscrolled viewport rectangle.
  return b.x < viewport.width && b.x + b.width > 0 && b.y < viewport.height &&
         b.y + b.height > 0;
}

ZIndex effective_z_index(const DocumentView& view, NodeId id) {
  const DomNode& node = view.node(id);
  if (node.z_index) return node.z_index;
  for (const DomNode* cur = view.parent(id); cur;
       cur = view.parent(cur->node_id)) {
    if (cur->position != Position::kStatic && cur->z_index) {
      return cur->z_index;
    }
  }
  return std::nullopt;
}

bool is_banner_word_candidate(const DocumentView& view, NodeId id) {
  const DomNode& node = view.node(id);
  if (!is_visible(node, view.viewport())) return false;
  if (node.is_scripted_text) return false;
  if (ZIndex z = effective_z_index(view, id); z && *z < 0) return false;
  for (const DomNode* cur = view.parent(id); cur;
       cur = view.parent(cur->node_id)) {
    if (cur->tag == "table") return false;
  }
  return true;
}

}  // namespace cookiescope::dom
