#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revdetect::util {

// Flat key-value settings read from an INI file. Keys inside a [section] are
// addressed as "section.key". Later assignments replace earlier ones.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  // Throws ParseError / IoError.
  static KeyValueConfig load(const std::filesystem::path& path);
  static KeyValueConfig parse(std::string_view text);

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  bool contains(const std::string& key) const { return values_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, std::string fallback) const;
  // Throw ParseError when the value does not parse.
  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key,
                                    std::vector<std::string> fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace revdetect::util
