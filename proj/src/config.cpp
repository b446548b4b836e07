#include "se2recon/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace se2recon {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw FormatError(origin + ":" + std::to_string(lineno) + ": expected `key = value`, got \"" +
                        stripped + "\"");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw FormatError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    if (cfg.values_.count(key)) {
      throw FormatError(origin + ":" + std::to_string(lineno) + ": duplicate key \"" + key + "\"");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path.string());
}

std::string Config::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw FormatError(origin_ + ": missing required key \"" + key + "\"");
  }
  return it->second;
}

long Config::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  std::size_t pos = 0;
  long out = 0;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) {
    throw FormatError(origin_ + ": key \"" + key + "\" is not an integer: \"" + v + "\"");
  }
  return out;
}

double Config::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  std::size_t pos = 0;
  double out = 0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) {
    throw FormatError(origin_ + ": key \"" + key + "\" is not a number: \"" + v + "\"");
  }
  return out;
}

std::optional<std::string> Config::find_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<long> Config::find_int(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_int(key);
}

std::optional<double> Config::find_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

}  // namespace se2recon
