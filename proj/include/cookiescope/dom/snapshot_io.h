#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cookiescope/dom/dom_model.h"

namespace cookiescope::dom {

inline constexpr std::string_view kSnapshotFormat = "cookiescope-snapshot";
inline constexpr int kSnapshotVersion = 1;

// Snapshot documents are JSON objects whose node keys mirror the DomNode
// fields one to one. The writer always emits every field; the reader fills
// defaults for omitted optional fields so fixtures can be written by hand:
//   own_text/attr_text ""  display_none/visibility_hidden false
//   opacity 1  z_index "auto"  position "static"  is_scripted_text false
//   has_click_handler false  children []
// node_id, tag and bbox are always required. Unknown keys are rejected.
nlohmann::ordered_json snapshot_to_json(const DomSnapshot& snapshot);
DomSnapshot snapshot_from_json(const nlohmann::json& doc);

std::string serialize_snapshot(const DomSnapshot& snapshot);
// Parses and validates. Throws SnapshotError.
DomSnapshot parse_snapshot(std::string_view text);
DomSnapshot load_snapshot_file(const std::filesystem::path& path);
void save_snapshot_file(const DomSnapshot& snapshot,
                        const std::filesystem::path& path);

}  // namespace cookiescope::dom
