#pragma once

// Content-addressed report store: <dir>/<sha256 hex>.json. The directory is
// $BETAINV_CACHE_DIR when set, else ./cache. Writes go to a unique temporary
// file first and are renamed into place, so concurrent writers never expose
// a partial entry. Unreadable entries are deleted and treated as misses.

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "betainv/cli/report.hpp"

namespace betainv {

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::precondition, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

class ReportCache {
 public:
  static constexpr const char* kEnvVar = "BETAINV_CACHE_DIR";

  explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::filesystem::path default_dir() {
    if (const char* env = std::getenv(kEnvVar); env && *env) return env;
    return "cache";
  }

  const std::filesystem::path& dir() const { return dir_; }

  /// Key of a request: engine version plus the canonical request document.
  static std::string key(const Json& request, const std::string& version = kEngineVersion) {
    Json k = {{"engine", kEngineName}, {"version", version}, {"format", kReportFormat}, {"request", request}};
    return sha256_hex(k.dump());
  }

  std::filesystem::path path_of(const std::string& key) const { return dir_ / (key + ".json"); }

  std::optional<Json> load(const std::string& key) const {
    const auto path = path_of(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      Json j = Json::parse(buf.str());
      if (j.is_object() && j.contains("report") && j.value("key", std::string()) == key) return j.at("report");
    } catch (const nlohmann::json::exception&) {
    }
    std::filesystem::remove(path, ec);  // corrupt: evict
    return std::nullopt;
  }

  void store(const std::string& key, const Json& report) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(ErrorKind::input, "cannot create cache directory " + dir_.string() + ": " + ec.message());
    static std::atomic<unsigned> counter{0};
    std::ostringstream tmpname;
    tmpname << key << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
    const auto tmp = dir_ / tmpname.str();
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw Error(ErrorKind::input, "cannot write cache entry " + tmp.string());
      out << Json{{"key", key}, {"report", report}}.dump(1) << "\n";
      if (!out) throw Error(ErrorKind::input, "cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path_of(key), ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorKind::input, "cannot move cache entry into place");
    }
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace betainv
