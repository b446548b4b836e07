#pragma once

// Flat `key = value` configuration files. Lines starting with '#' (after
// optional leading whitespace) and blank lines are ignored; keys may appear
// once each. Values stay strings until a typed getter is called.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "se2recon/errors.hpp"

namespace se2recon {

class Config {
 public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Typed getters throw FormatError when the key is missing or malformed;
  // the optional forms return nullopt when absent.
  std::string get_string(const std::string& key) const;
  long get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::optional<std::string> find_string(const std::string& key) const;
  std::optional<long> find_int(const std::string& key) const;
  std::optional<double> find_double(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

}  // namespace se2recon
