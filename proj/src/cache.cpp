#include "hq/cache.hpp"

#include <sys/file.h>

#include <cstdio>
#include <cstdlib>

#include "hq/error.hpp"

namespace hq {

namespace {

/// Holds a flock on an open stdio file for the lifetime of the guard.
class FileLock {
 public:
  FileLock(std::FILE* f, int op) : fd_(fileno(f)) { ::flock(fd_, op); }
  ~FileLock() { ::flock(fd_, LOCK_UN); }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

}  // namespace

std::filesystem::path ResultCache::default_path() {
  if (const char* env = std::getenv("HQ_CACHE_PATH"); env && *env) return env;
  const char* home = std::getenv("HOME");
  std::filesystem::path base = home && *home ? home : ".";
  return base / ".cache" / "hq" / "results.jsonl";
}

std::string ResultCache::key_hash(const nlohmann::json& request) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : request.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<Rational> ResultCache::lookup(const nlohmann::json& request) const {
  std::FILE* f = std::fopen(path_.c_str(), "r");
  if (!f) return std::nullopt;
  std::optional<Rational> found;
  {
    FileLock lock(f, LOCK_SH);
    const std::string key = key_hash(request);
    std::string line;
    int c;
    auto consider = [&] {
      if (line.empty()) return;
      auto entry = nlohmann::json::parse(line, nullptr, false);
      line.clear();
      if (entry.is_discarded() || !entry.is_object()) return;
      if (entry.value("key_hash", "") != key || entry.value("engine_version", "") != kEngineVersion) return;
      if (entry["request"] != request) return;
      try {
        found = make_rational(Integer(entry.at("value_numerator").get<std::string>()),
                              Integer(entry.at("value_denominator").get<std::string>()));
      } catch (const std::exception&) {
        // A damaged line is treated as a miss.
      }
    };
    while ((c = std::fgetc(f)) != EOF) {
      if (c == '\n') {
        consider();
      } else {
        line.push_back(static_cast<char>(c));
      }
    }
    consider();
  }
  std::fclose(f);
  return found;
}

void ResultCache::store(const nlohmann::json& request, const Rational& value) const {
  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
  std::FILE* f = std::fopen(path_.c_str(), "a");
  if (!f) throw Error("cannot open cache file " + path_.string());
  nlohmann::json entry = {{"key_hash", key_hash(request)},
                          {"request", request},
                          {"value_numerator", to_string(Integer(value.get_num()))},
                          {"value_denominator", to_string(Integer(value.get_den()))},
                          {"engine_version", kEngineVersion}};
  const std::string line = entry.dump() + "\n";
  {
    FileLock lock(f, LOCK_EX);
    std::fwrite(line.data(), 1, line.size(), f);
    std::fflush(f);
  }
  std::fclose(f);
}

}  // namespace hq
