#include "cookiescope/engine/cmp.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace cookiescope::engine {

namespace {

std::string display_name(std::string name) {
  std::replace(name.begin(), name.end(), '_', ' ');
  return name;
}

}  // namespace

CmpRegistry::CmpRegistry(std::vector<CustomApi> apis,
                         std::map<int, std::string> tcf_ids,
                         std::vector<std::string> featured)
    : apis_(std::move(apis)),
      tcf_ids_(std::move(tcf_ids)),
      featured_(std::move(featured)) {
  std::set<std::string> markers;
  for (const CustomApi& api : apis_) {
    if (api.marker.empty() || api.cmp_name.empty()) {
      throw CmpRegistryError("api entry needs a marker and a name");
    }
    if (!markers.insert(api.marker).second) {
      throw CmpRegistryError("duplicate marker " + api.marker);
    }
  }
}

const CustomApi* CmpRegistry::find_marker(std::string_view marker) const {
  for (const CustomApi& api : apis_) {
    if (api.marker == marker) return &api;
  }
  return nullptr;
}

std::optional<std::string> CmpRegistry::name_for_id(int cmp_id) const {
  auto it = tcf_ids_.find(cmp_id);
  if (it == tcf_ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> CmpRegistry::markers() const {
  std::vector<std::string> out;
  for (const CustomApi& api : apis_) out.push_back(api.marker);
  return out;
}

std::string CmpRegistry::bucket(std::string_view cmp_name) const {
  for (const std::string& name : featured_) {
    if (name == cmp_name) return name;
  }
  return "Others";
}

CmpRegistry parse_cmp_registry(std::string_view text) {
  std::vector<CustomApi> apis;
  std::map<int, std::string> tcf;
  std::vector<std::string> featured;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string part; fields >> part;) parts.push_back(part);
    if (parts.empty()) continue;
    const std::string where = "cmp registry line " + std::to_string(line_no);
    if (parts[0] == "api" && (parts.size() == 3 || parts.size() == 4)) {
      apis.push_back({parts[1], display_name(parts[2]),
                      parts.size() == 4 ? parts[3] : std::string()});
    } else if (parts[0] == "tcf" && parts.size() == 3) {
      int id = 0;
      auto [ptr, ec] = std::from_chars(parts[1].data(),
                                       parts[1].data() + parts[1].size(), id);
      if (ec != std::errc() || ptr != parts[1].data() + parts[1].size()) {
        throw CmpRegistryError(where + ": bad cmp id '" + parts[1] + "'");
      }
      if (!tcf.emplace(id, display_name(parts[2])).second) {
        throw CmpRegistryError(where + ": duplicate cmp id " + parts[1]);
      }
    } else if (parts[0] == "featured" && parts.size() == 2) {
      featured.push_back(display_name(parts[1]));
    } else {
      throw CmpRegistryError(where + ": unrecognised row");
    }
  }
  return CmpRegistry(std::move(apis), std::move(tcf), std::move(featured));
}

CmpRegistry load_cmp_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CmpRegistryError("cannot open cmp registry " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_cmp_registry(buffer.str());
}

std::string_view to_string(DetectedVia via) {
  switch (via) {
    case DetectedVia::kTcfApi: return "tcfapi";
    case DetectedVia::kCustomApi: return "custom-api";
    case DetectedVia::kNone: break;
  }
  return "none";
}

std::optional<DetectedVia> detected_via_from_string(std::string_view text) {
  for (DetectedVia via : {DetectedVia::kTcfApi, DetectedVia::kCustomApi, DetectedVia::kNone}) {
    if (to_string(via) == text) return via;
  }
  return std::nullopt;
}

CmpRecord identify_cmp(const CmpAnswer& answer, const CmpRegistry& registry) {
  CmpRecord record;
  if (answer.tcf) {
    record.detected_via = DetectedVia::kTcfApi;
    record.cmp_id = answer.tcf->cmp_id;
    if (answer.tcf->cmp_name && !answer.tcf->cmp_name->empty()) {
      record.cmp_name = *answer.tcf->cmp_name;
    } else if (answer.tcf->cmp_id) {
      record.cmp_name = registry.name_for_id(*answer.tcf->cmp_id).value_or(
          std::string(kUnknownCmp));
    }
    return record;
  }
  for (const std::string& marker : answer.custom_markers) {
    if (const CustomApi* api = registry.find_marker(marker)) {
      record.detected_via = DetectedVia::kCustomApi;
      record.cmp_name = api->cmp_name;
      return record;
    }
  }
  return record;
}

}  // namespace cookiescope::engine
