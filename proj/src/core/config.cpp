#include "dcmwalk/core/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dcmwalk {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  // '#' and ';' start a comment unless inside nothing fancy (no quoting here).
  const auto pos = s.find_first_of("#;");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section at line " +
                                 std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key=value at line " +
                               std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: empty key at line " +
                               std::to_string(lineno));
    if (!section.empty()) key = section + "." + key;
    cfg.kv_[key] = value;
  }
  return cfg;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' is not a number: '" +
                             it->second + "'");
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' is not an integer: '" +
                             it->second + "'");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::runtime_error("config: key '" + key + "' is not a boolean: '" +
                           v + "'");
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  const auto it = kv_.find(key);
  if (it == kv_.end()) return out;
  std::string item;
  std::istringstream ss(it->second);
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

void Config::set_double(const std::string& key, double value) {
  std::ostringstream ss;
  ss.precision(17);
  ss << value;
  kv_[key] = ss.str();
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.kv_) kv_[k] = v;
}

std::string Config::canonical() const {
  std::ostringstream ss;
  for (const auto& [k, v] : kv_) ss << k << "=" << v << "\n";
  return ss.str();
}

std::uint64_t Config::hash() const {
  const std::string c = canonical();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char ch : c) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

void Config::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("config: cannot write '" + path + "'");
  // Group keys back into sections for readability.
  std::string current_section;
  for (const auto& [k, v] : kv_) {
    const auto dot = k.rfind('.');
    const std::string section = dot == std::string::npos ? "" : k.substr(0, dot);
    const std::string name = dot == std::string::npos ? k : k.substr(dot + 1);
    if (section != current_section) {
      out << "[" << section << "]\n";
      current_section = section;
    }
    out << name << " = " << v << "\n";
  }
}

}  // namespace dcmwalk
