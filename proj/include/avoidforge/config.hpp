#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "avoidforge/bits.hpp"

namespace avoidforge {

/// Sectioned key=value configuration. A section header may share its line
/// with pairs: `[extract] N=18 m=5 seed=7`. `#` and `;` start comments.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  void set(const std::string& section, const std::string& key, const std::string& value);
  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const { return sections_.count(section) != 0; }
  std::string get(const std::string& section, const std::string& key) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const;

  /// Throws BadArgument on any key outside `allowed` or any missing key in `required`.
  void check_section(const std::string& section, const std::set<std::string>& allowed,
                     const std::set<std::string>& required) const;
  std::vector<std::string> section_names() const;
  std::string dump() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// One flat report line of `key=value` fields in insertion order.
class Record {
 public:
  Record& add(std::string key, std::string value);
  Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
  Record& add(std::string key, std::uint64_t value) { return add(std::move(key), std::to_string(value)); }
  Record& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "1" : "0")); }
  Record& add(std::string key, const Rational& value) { return add(std::move(key), value.str()); }
  Record& add(std::string key, int value) { return add(std::move(key), std::to_string(value)); }

  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }
  std::string get(const std::string& key) const;
  std::string line() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

inline constexpr const char* kReportHeader = "# avoidforge report v1";

/// Header line, then one line per record.
std::string emit_report(std::span<const Record> records);

}  // namespace avoidforge
