#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sweetspot {

inline constexpr const char* kVersion = "0.1.0";

// Record of one CLI invocation: resolved configuration, seed, outputs, and
// wall-clock bounds. Written next to the run's outputs even when the run
// fails, so every artifact can be traced back to the command that made it.
struct RunManifest {
  std::string command;
  std::string command_line;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::vector<std::string> outputs;
  std::string started;
  std::string finished;
  std::string status = "ok";
  std::string error;
};

std::string iso_timestamp_utc();

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace sweetspot
