#include "qnash/config.hpp"

#include <fstream>
#include <sstream>

#include "qnash/errors.hpp"
#include "qnash/format.hpp"

namespace qnash {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto sit = sections.find(section);
  return sit != sections.end() && sit->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  auto sit = sections.find(section);
  if (sit == sections.end()) return fallback;
  auto kit = sit->second.find(key);
  return kit == sit->second.end() ? fallback : kit->second;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  if (!has(section, key)) return fallback;
  return parse_double(sections.at(section).at(key), section + "." + key);
}

std::int64_t ConfigFile::get_int(const std::string& section, const std::string& key,
                                 std::int64_t fallback) const {
  if (!has(section, key)) return fallback;
  return parse_int(sections.at(section).at(key), section + "." + key);
}

ConfigFile parse_config_text(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw config_error("config line " + std::to_string(lineno) + ": bad section header");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) {
        throw config_error("config line " + std::to_string(lineno) + ": empty section name");
      }
      cfg.sections[section];
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    }
    if (section.empty()) {
      throw config_error("config line " + std::to_string(lineno) + ": key outside any [section]");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw config_error("config line " + std::to_string(lineno) + ": empty key");
    }
    cfg.sections[section][key] = value;
  }
  return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace qnash
