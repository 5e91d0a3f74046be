#include "cookiescope/dom/snapshot_io.h"

#include <fstream>
#include <set>
#include <sstream>

namespace cookiescope::dom {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string, std::less<>> kNodeKeys = {
    "node_id",  "tag",      "own_text",         "attr_text",
    "display_none", "visibility_hidden", "opacity", "bbox",
    "z_index",  "position", "is_scripted_text", "has_click_handler",
    "href",     "children", "iframe_doc"};

const std::set<std::string, std::less<>> kSnapshotKeys = {
    "format", "version", "url", "captured_at", "viewport", "root"};

ordered_json node_to_json(const DomNode& node) {
  ordered_json out;
  out["node_id"] = node.node_id;
  out["tag"] = node.tag;
  out["own_text"] = node.own_text;
  out["attr_text"] = node.attr_text;
  out["display_none"] = node.display_none;
  out["visibility_hidden"] = node.visibility_hidden;
  out["opacity"] = node.opacity;
  out["bbox"] = ordered_json::array(
      {node.bbox.x, node.bbox.y, node.bbox.width, node.bbox.height});
  if (node.z_index) {
    out["z_index"] = *node.z_index;
  } else {
    out["z_index"] = "auto";
  }
  out["position"] = std::string(to_string(node.position));
  out["is_scripted_text"] = node.is_scripted_text;
  out["has_click_handler"] = node.has_click_handler;
  if (node.href) out["href"] = *node.href;
  ordered_json children = ordered_json::array();
  for (const DomNode& child : node.children) {
    children.push_back(node_to_json(child));
  }
  out["children"] = std::move(children);
  if (node.iframe_doc) out["iframe_doc"] = snapshot_to_json(*node.iframe_doc);
  return out;
}

template <typename T>
T get_or(const json& obj, std::string_view key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return it->get<T>();
}

DomNode node_from_json(const json& obj) {
  if (!obj.is_object()) throw SnapshotError("node must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!kNodeKeys.contains(key)) {
      throw SnapshotError("unknown node key '" + key + "'");
    }
  }
  for (const char* required : {"node_id", "tag", "bbox"}) {
    if (!obj.contains(required)) {
      throw SnapshotError(std::string("node missing '") + required + "'");
    }
  }
  DomNode node;
  node.node_id = obj.at("node_id").get<NodeId>();
  node.tag = obj.at("tag").get<std::string>();
  node.own_text = get_or<std::string>(obj, "own_text", "");
  node.attr_text = get_or<std::string>(obj, "attr_text", "");
  node.display_none = get_or(obj, "display_none", false);
  node.visibility_hidden = get_or(obj, "visibility_hidden", false);
  node.opacity = get_or(obj, "opacity", 1.0);
  const json& bbox = obj.at("bbox");
  if (!bbox.is_array() || bbox.size() != 4) {
    throw SnapshotError("bbox must be [x, y, width, height] on node " +
                        std::to_string(node.node_id));
  }
  node.bbox = {bbox[0].get<double>(), bbox[1].get<double>(),
               bbox[2].get<double>(), bbox[3].get<double>()};
  if (auto it = obj.find("z_index"); it != obj.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "auto") {
        throw SnapshotError("z_index must be an integer or \"auto\"");
      }
    } else {
      node.z_index = it->get<int>();
    }
  }
  if (auto it = obj.find("position"); it != obj.end()) {
    auto position = position_from_string(it->get<std::string>());
    if (!position) {
      throw SnapshotError("bad position '" + it->get<std::string>() + "'");
    }
    node.position = *position;
  }
  node.is_scripted_text = get_or(obj, "is_scripted_text", false);
  node.has_click_handler = get_or(obj, "has_click_handler", false);
  if (auto it = obj.find("href"); it != obj.end() && !it->is_null()) {
    node.href = it->get<std::string>();
  }
  if (auto it = obj.find("children"); it != obj.end()) {
    for (const json& child : *it) node.children.push_back(node_from_json(child));
  }
  if (auto it = obj.find("iframe_doc"); it != obj.end() && !it->is_null()) {
    node.iframe_doc = std::make_shared<const DomSnapshot>(snapshot_from_json(*it));
  }
  return node;
}

}  // namespace

ordered_json snapshot_to_json(const DomSnapshot& snapshot) {
  ordered_json out;
  out["format"] = kSnapshotFormat;
  out["version"] = kSnapshotVersion;
  out["url"] = snapshot.url;
  out["captured_at"] = snapshot.captured_at;
  out["viewport"] = {{"width", snapshot.viewport.width},
                     {"height", snapshot.viewport.height}};
  out["root"] = node_to_json(snapshot.root);
  return out;
}

DomSnapshot snapshot_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw SnapshotError("snapshot must be an object");
    for (const auto& [key, _] : doc.items()) {
      if (!kSnapshotKeys.contains(key)) {
        throw SnapshotError("unknown snapshot key '" + key + "'");
      }
    }
    // Nested frame documents may omit the format header.
    if (get_or<std::string>(doc, "format", std::string(kSnapshotFormat)) !=
        kSnapshotFormat) {
      throw SnapshotError("not a snapshot document (format field)");
    }
    if (int version = get_or(doc, "version", kSnapshotVersion);
        version != kSnapshotVersion) {
      throw SnapshotError("unsupported snapshot version " +
                          std::to_string(version));
    }
    DomSnapshot snapshot;
    snapshot.url = get_or<std::string>(doc, "url", "");
    snapshot.captured_at = get_or<std::string>(doc, "captured_at", "");
    const json& viewport = doc.at("viewport");
    snapshot.viewport = {viewport.at("width").get<double>(),
                         viewport.at("height").get<double>()};
    snapshot.root = node_from_json(doc.at("root"));
    return snapshot;
  } catch (const json::exception& e) {
    throw SnapshotError(std::string("malformed snapshot: ") + e.what());
  }
}

std::string serialize_snapshot(const DomSnapshot& snapshot) {
  return snapshot_to_json(snapshot).dump(1, '\t') + "\n";
}

DomSnapshot parse_snapshot(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw SnapshotError("snapshot is not valid JSON");
  if (!doc.is_object() || !doc.contains("format")) {
    throw SnapshotError("not a snapshot document (format field)");
  }
  DomSnapshot snapshot = snapshot_from_json(doc);
  validate(snapshot);
  return snapshot;
}

DomSnapshot load_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SnapshotError("cannot open snapshot " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_snapshot(buffer.str());
  } catch (const SnapshotError& e) {
    throw SnapshotError(path.filename().string() + ": " + e.what());
  }
}

void save_snapshot_file(const DomSnapshot& snapshot,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SnapshotError("cannot write snapshot " + path.string());
  out << serialize_snapshot(snapshot);
}

}  // namespace cookiescope::dom
