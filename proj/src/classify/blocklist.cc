#include "cookiescope/classify/blocklist.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cookiescope::classify {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

}  // namespace

Blocklist Blocklist::parse(std::string_view text) {
  Blocklist list;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string first, second;
    if (!(fields >> first)) continue;
    if ((first == "0.0.0.0" || first == "127.0.0.1") && (fields >> second)) first = second;
    list.add(first);
  }
  return list;
}

Blocklist Blocklist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open blocklist " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void Blocklist::add(std::string_view domain) {
  if (domain.starts_with('.')) domain.remove_prefix(1);
  if (!domain.empty()) domains_.insert(lower(domain));
}

bool Blocklist::contains(std::string_view domain) const {
  return domains_.contains(lower(domain));
}

}  // namespace cookiescope::classify
