#pragma once

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "vdwcp/errors.hpp"

namespace vdwcp {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

// key = value run files: '#' comments, blank lines ignored, duplicate or
// malformed keys rejected. Consumers declare the keys they understand via
// allow_only, so a typo fails loudly instead of silently using a default.
class RunConfig {
 public:
  RunConfig() = default;

  static RunConfig from_stream(std::istream& is) {
    RunConfig rc;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#') continue;
      std::size_t eq = t.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          " is not key = value: '" + t + "'");
      std::string key = detail::trim(t.substr(0, eq));
      std::string val = detail::trim(t.substr(eq + 1));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          " has an empty key");
      if (!rc.kv_.emplace(key, val).second)
        throw ConfigError("duplicate config key '" + key + "'");
    }
    return rc;
  }

  static RunConfig from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    return from_stream(f);
  }

  static RunConfig from_string(const std::string& text) {
    std::istringstream is(text);
    return from_stream(is);
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
  }

  double number(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const char* c = it->second.c_str();
    char* end = nullptr;
    double v = std::strtod(c, &end);
    if (end == c || *end != '\0')
      throw ConfigError("config key '" + key + "' is not a number: '" +
                        it->second + "'");
    return v;
  }

  long long integer(const std::string& key, long long fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const char* c = it->second.c_str();
    char* end = nullptr;
    long long v = std::strtoll(c, &end, 10);
    if (end == c || *end != '\0')
      throw ConfigError("config key '" + key + "' is not an integer: '" +
                        it->second + "'");
    return v;
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    std::set<std::string_view> allowed(keys);
    for (const auto& [k, v] : kv_)
      if (!allowed.count(k))
        throw ConfigError("unknown config key '" + k + "'");
  }

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace vdwcp
