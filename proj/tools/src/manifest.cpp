#include "tmdyn_cli/manifest.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "tmdyn/config_json.hpp"
#include "tmdyn/error.hpp"

namespace tmdyn::cli {

namespace {

std::string iso_time(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::json doc;
  doc["command"] = m.command;
  doc["argv"] = m.argv;
  doc["config"] = nlohmann::json::parse(config_to_json(m.config));
  doc["version"] = TMDYN_VERSION;
  doc["seeds"] = m.seeds;
  doc["outputs"] = m.outputs;
  doc["started"] = iso_time(m.started);
  doc["finished"] = iso_time(m.finished);
  doc["wall_clock_s"] = std::chrono::duration<double>(m.finished - m.started).count();
  doc["details"] = nlohmann::json::parse(m.extra_json);
  return doc.dump();
}

std::string append_manifest(const std::string& dir, const RunManifest& m) {
  const std::filesystem::path path = std::filesystem::path(dir.empty() ? "." : dir) / kManifestFile;
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::kConfigError, "out", "cannot append to " + path.string());
  out << manifest_to_json(m) << '\n';
  return path.string();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kConfigError, "out", "cannot open '" + tmp.string() + "'");
    out << contents;
    if (!out) throw Error(ErrorCode::kConfigError, "out", "write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace tmdyn::cli
