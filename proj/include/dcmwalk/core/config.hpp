#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dcmwalk {

// Flat key-value configuration read from an INI-style file:
//
//   [section]
//   key = value        # comment
//
// Keys are addressed as "section.key". Values are stored verbatim and parsed
// on access. Unknown keys are kept (callers may iterate), missing keys fall
// back to the supplied default. canonical() gives a sorted, normalized dump
// used for config hashing so checkpoints can detect mismatched settings.
class Config {
 public:
  static Config load(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);

  // Overlay: every key in `other` replaces or adds to this config.
  void merge(const Config& other);

  std::string canonical() const;
  std::uint64_t hash() const;  // FNV-1a over canonical()

  void save(const std::string& path) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace dcmwalk
