#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hq/symbolic.hpp"

namespace hq {

inline constexpr const char* kEngineVersion = "1.0.0";

/// Append-only JSON-lines store of exact results. Each line is
/// {key_hash, request, value_numerator, value_denominator, engine_version};
/// the key is the FNV-1a hash of the request serialized with sorted keys.
/// Readers take a shared flock and writers an exclusive one. Entries from
/// another engine version are ignored.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

  /// $HQ_CACHE_PATH, else ~/.cache/hq/results.jsonl.
  static std::filesystem::path default_path();
  static std::string key_hash(const nlohmann::json& request);

  const std::filesystem::path& path() const { return path_; }
  std::optional<Rational> lookup(const nlohmann::json& request) const;
  void store(const nlohmann::json& request, const Rational& value) const;

 private:
  std::filesystem::path path_;
};

}  // namespace hq
