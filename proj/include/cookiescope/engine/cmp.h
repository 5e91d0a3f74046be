#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cookiescope::engine {

// A CMP-specific global whose presence identifies the platform and which
// may offer a reject-everything call.
struct CustomApi {
  std::string marker;       // e.g. "OneTrust"
  std::string cmp_name;
  std::string reject_call;  // e.g. "OneTrust.RejectAll()"; empty if none
};

class CmpRegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CmpRegistry {
 public:
  CmpRegistry() = default;
  CmpRegistry(std::vector<CustomApi> apis, std::map<int, std::string> tcf_ids,
              std::vector<std::string> featured);

  const std::vector<CustomApi>& apis() const { return apis_; }
  const CustomApi* find_marker(std::string_view marker) const;
  std::optional<std::string> name_for_id(int cmp_id) const;
  std::vector<std::string> markers() const;
  // The named CMP, or "Others" when it is not one of the featured ones.
  std::string bucket(std::string_view cmp_name) const;

 private:
  std::vector<CustomApi> apis_;
  std::map<int, std::string> tcf_ids_;
  std::vector<std::string> featured_;
};

// Whitespace-separated rows, '#' comments:
//   api <marker> <cmp name> [<reject call>]
//   tcf <cmp id> <cmp name>
//   featured <cmp name>
// Names cannot contain spaces (use '_', shown as a space).
CmpRegistry parse_cmp_registry(std::string_view text);
CmpRegistry load_cmp_registry(const std::filesystem::path& path);

// What the in-page bridge reports.
struct TcfPing {
  std::optional<int> cmp_id;
  std::optional<std::string> cmp_name;
  bool operator==(const TcfPing&) const = default;
};

struct CmpAnswer {
  std::optional<TcfPing> tcf;                // entry point present and answered
  std::vector<std::string> custom_markers;   // registry markers found, in registry order
  std::vector<std::string> callable_rejects; // markers whose reject call exists
  bool operator==(const CmpAnswer&) const = default;
};

enum class DetectedVia { kTcfApi, kCustomApi, kNone };
std::string_view to_string(DetectedVia via);
std::optional<DetectedVia> detected_via_from_string(std::string_view text);

inline constexpr std::string_view kUnknownCmp = "unknown";

struct CmpRecord {
  DetectedVia detected_via = DetectedVia::kNone;
  std::string cmp_name{kUnknownCmp};
  std::optional<int> cmp_id;
  bool operator==(const CmpRecord&) const = default;
};

// TCF answer first (its name, else the registry name for its id), then the
// first present custom marker, else none.
CmpRecord identify_cmp(const CmpAnswer& answer, const CmpRegistry& registry);

}  // namespace cookiescope::engine
