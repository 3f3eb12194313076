#include "avoidforge/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "avoidforge/error.hpp"

namespace avoidforge {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) throw Error(ErrorKind::SyntaxError, "unterminated section header", line_no);
      section = std::string(trim(line.substr(1, close - 1)));
      if (!valid_name(section)) throw Error(ErrorKind::SyntaxError, "bad section name", line_no);
      cfg.sections_[section];
      line = trim(line.substr(close + 1));
    }
    std::istringstream is{std::string(line)};
    std::string tok;
    while (is >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
        throw Error(ErrorKind::SyntaxError, "expected key=value, got '" + tok + "'", line_no);
      if (section.empty()) throw Error(ErrorKind::SyntaxError, "key outside any section", line_no);
      const auto key = tok.substr(0, eq);
      if (!valid_name(key)) throw Error(ErrorKind::SyntaxError, "bad key '" + key + "'", line_no);
      if (cfg.has(section, key)) throw Error(ErrorKind::SyntaxError, "duplicate key '" + key + "'", line_no);
      cfg.sections_[section][key] = tok.substr(eq + 1);
    }
    if (pos > text.size()) break;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) != 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw Error(ErrorKind::BadArgument, "missing config key [" + section + "] " + key);
  return sections_.at(section).at(key);
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key) const {
  const auto v = get(section, key);
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw Error(ErrorKind::BadArgument, "[" + section + "] " + key + " must be an unsigned integer");
  return out;
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const {
  return has(section, key) ? get_u64(section, key) : fallback;
}

void Config::check_section(const std::string& section, const std::set<std::string>& allowed,
                           const std::set<std::string>& required) const {
  auto it = sections_.find(section);
  if (it != sections_.end())
    for (const auto& [k, v] : it->second)
      if (!allowed.count(k)) throw Error(ErrorKind::BadArgument, "unknown config key [" + section + "] " + k);
  for (const auto& k : required)
    if (!has(section, k)) throw Error(ErrorKind::BadArgument, "missing config key [" + section + "] " + k);
}

std::vector<std::string> Config::section_names() const {
  std::vector<std::string> out;
  for (const auto& [s, kv] : sections_) out.push_back(s);
  return out;
}

std::string Config::dump() const {
  std::ostringstream os;
  for (const auto& [s, kv] : sections_) {
    os << "[" << s << "]";
    for (const auto& [k, v] : kv) os << " " << k << "=" << v;
    os << "\n";
  }
  return os.str();
}

Record& Record::add(std::string key, std::string value) {
  if (key.find_first_of(" =\n") != std::string::npos || value.find_first_of(" \n") != std::string::npos)
    throw Error(ErrorKind::BadArgument, "report fields must not contain spaces");
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

std::string Record::get(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return v;
  throw Error(ErrorKind::BadArgument, "record has no field " + key);
}

std::string Record::line() const {
  std::string out;
  for (const auto& [k, v] : fields_) {
    if (!out.empty()) out += ' ';
    out += k + "=" + v;
  }
  return out;
}

std::string emit_report(std::span<const Record> records) {
  std::string out = std::string(kReportHeader) + "\n";
  for (const auto& r : records) out += r.line() + "\n";
  return out;
}

}  // namespace avoidforge
