#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qnash {

// Flat key-value config with [section] headers, one section per module.
// Lines are `key = value`; `#` starts a full-line comment. Keys must live
// inside a section. Lookup misses fall back to caller defaults so command
// line flags can override any file value.
struct ConfigFile {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
};

ConfigFile parse_config_text(const std::string& text);
ConfigFile parse_config_file(const std::string& path);

}  // namespace qnash
