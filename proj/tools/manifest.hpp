#pragma once

#include <cstdint>
#include <ctime>
#include <string>
#include <vector>

#include <json.hpp>

namespace qnash {

// Record of one CLI invocation. args holds everything after the program name,
// which is enough to replay the run; rerunning with the same args and seed
// reproduces every other output file byte for byte.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string timestamp;  // ISO-8601 UTC
  std::string artifact_version;
  std::vector<std::string> args;
};

inline std::string timestamp_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command", m.command},
                     {"config_path", m.config_path},
                     {"seed", m.seed},
                     {"output_dir", m.output_dir},
                     {"timestamp", m.timestamp},
                     {"artifact_version", m.artifact_version},
                     {"args", m.args}};
}

}  // namespace qnash
