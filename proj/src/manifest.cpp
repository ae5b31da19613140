#include "sweetspot/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "sweetspot/text.hpp"

namespace sweetspot {

std::string iso_timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                utc.tm_year + 1900, utc.tm_mon + 1, utc.tm_mday, utc.tm_hour,
                utc.tm_min, utc.tm_sec);
  return buf;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write manifest: " + path.string());
  }
  out << "command = " << manifest.command << '\n';
  out << "command_line = " << manifest.command_line << '\n';
  out << "version = " << manifest.version << '\n';
  out << "seed = " << fmt(manifest.seed) << '\n';
  for (const auto& [key, value] : manifest.config) {
    out << "config." << key << " = " << value << '\n';
  }
  for (const std::string& output : manifest.outputs) {
    out << "output = " << output << '\n';
  }
  out << "started = " << manifest.started << '\n';
  out << "finished = " << manifest.finished << '\n';
  out << "status = " << manifest.status << '\n';
  if (!manifest.error.empty()) {
    out << "error = " << manifest.error << '\n';
  }
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read manifest: " + path.string());
  }
  RunManifest manifest;
  manifest.version.clear();
  manifest.status.clear();
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t sep = line.find(" = ");
    if (sep == std::string::npos) continue;
    const std::string key = line.substr(0, sep);
    const std::string value = line.substr(sep + 3);
    if (key == "command") {
      manifest.command = value;
    } else if (key == "command_line") {
      manifest.command_line = value;
    } else if (key == "version") {
      manifest.version = value;
    } else if (key == "seed") {
      manifest.seed = std::stoull(value);
    } else if (key == "output") {
      manifest.outputs.push_back(value);
    } else if (key == "started") {
      manifest.started = value;
    } else if (key == "finished") {
      manifest.finished = value;
    } else if (key == "status") {
      manifest.status = value;
    } else if (key == "error") {
      manifest.error = value;
    } else if (key.rfind("config.", 0) == 0) {
      manifest.config.emplace_back(key.substr(7), value);
    }
  }
  return manifest;
}

}  // namespace sweetspot
