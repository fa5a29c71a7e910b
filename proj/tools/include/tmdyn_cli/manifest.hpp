#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "tmdyn/config.hpp"

namespace tmdyn::cli {

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  TMConfig config;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> outputs;
  std::string extra_json = "{}";  // command-specific fields
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
};

inline constexpr const char* kManifestFile = "tmdyn_manifest.jsonl";

std::string manifest_to_json(const RunManifest& m);

/// Appends one JSON line to `dir`/tmdyn_manifest.jsonl.
std::string append_manifest(const std::string& dir, const RunManifest& m);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace tmdyn::cli
