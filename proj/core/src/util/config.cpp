#include "revdetect/util/config.hpp"

#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "revdetect/error.hpp"
#include "revdetect/util/fs.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::util {

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  KeyValueConfig config;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      config.values_[key] = std::string(trim(node.data()));
      continue;
    }
    for (const auto& [sub, leaf] : node) {
      config.values_[key + "." + sub] = std::string(trim(leaf.data()));
    }
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, std::string fallback) const {
  auto v = get(key);
  return v ? *v : std::move(fallback);
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    throw ParseError("config key '" + key + "' is not an integer: '" + *v + "'");
  }
  return out;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  double out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    throw ParseError("config key '" + key + "' is not a number: '" + *v + "'");
  }
  return out;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  const std::string lowered = ascii_lower(*v);
  if (lowered == "true" || lowered == "on" || lowered == "yes" || lowered == "1") return true;
  if (lowered == "false" || lowered == "off" || lowered == "no" || lowered == "0") return false;
  throw ParseError("config key '" + key + "' is not a boolean: '" + *v + "'");
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key,
                                                  std::vector<std::string> fallback) const {
  auto v = get(key);
  return v ? split_list(*v) : std::move(fallback);
}

}  // namespace revdetect::util
