#pragma once

// Flat line-oriented configuration: `section.key = value` per line, `#` starts a
// comment, lists are bracketed comma lists and may nest and span lines.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/linalg.hpp"

namespace netsync {

/// A parsed value: a scalar token or a list of values.
struct ConfigValue {
  std::string scalar;
  std::vector<ConfigValue> items;
  bool is_list = false;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

class ValueParser {
 public:
  ValueParser(std::string_view text, std::string key) : text_(text), key_(std::move(key)) {}

  ConfigValue parse() {
    ConfigValue v = value();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    return v;
  }

 private:
  ConfigValue value() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '[') return list();
    return scalar();
  }

  ConfigValue list() {
    ++pos_;  // '['
    ConfigValue v;
    v.is_list = true;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return v;
    }
    while (true) {
      v.items.push_back(value());
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated list");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        return v;
      }
      fail("expected ',' or ']' in list");
    }
  }

  ConfigValue scalar() {
    skip_ws();
    ConfigValue v;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      const std::size_t end = text_.find('"', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated string");
      v.scalar = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return v;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '[') ++pos_;
    v.scalar = trim(text_.substr(start, pos_ - start));
    if (v.scalar.empty()) fail("empty value");
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("config key '" + key_ + "': " + why);
  }

  std::string_view text_;
  std::string key_;
  std::size_t pos_ = 0;
};

}  // namespace detail

class ConfigFile {
 public:
  static ConfigFile parse(std::string_view text) {
    ConfigFile cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    std::string pending_key;
    std::string pending_value;
    int depth = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (depth == 0) {
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
          throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        pending_key = detail::trim(std::string_view(t).substr(0, eq));
        pending_value = detail::trim(std::string_view(t).substr(eq + 1));
        if (pending_key.empty())
          throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
      } else {
        pending_value += ' ';
        pending_value += line;
      }
      depth = 0;
      for (char c : pending_value) depth += (c == '[') - (c == ']');
      if (depth < 0) throw ConfigError("config key '" + pending_key + "': unbalanced ']'");
      if (depth == 0) cfg.set(pending_key, pending_value);
    }
    if (depth != 0) throw ConfigError("config key '" + pending_key + "': unterminated list");
    return cfg;
  }

  static ConfigFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  /// Sets or replaces a key; the value text is parsed immediately.
  void set(const std::string& key, const std::string& value_text) {
    if (key.empty()) throw ConfigError("config: empty key");
    values_[key] = detail::ValueParser(value_text, key).parse();
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, ConfigValue>& entries() const noexcept { return values_; }

  const ConfigValue& get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config key '" + key + "' is missing");
    return it->second;
  }

  std::string get_string(const std::string& key) const {
    const auto& v = get(key);
    if (v.is_list) throw ConfigError("config key '" + key + "': expected a scalar");
    return v.scalar;
  }

  double get_double(const std::string& key) const { return to_double(get(key), key); }

  long get_int(const std::string& key) const {
    const double d = get_double(key);
    if (d != std::floor(d)) throw ConfigError("config key '" + key + "': expected an integer");
    return static_cast<long>(d);
  }

  std::uint64_t get_seed(const std::string& key) const {
    const std::string s = get_string(key);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError("config key '" + key + "': expected a non-negative integer seed");
    return out;
  }

  bool get_bool(const std::string& key) const {
    const std::string s = get_string(key);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("config key '" + key + "': expected true or false");
  }

  /// Flat list of numbers; a bare scalar reads as a one-element vector.
  Vector get_vector(const std::string& key) const {
    const auto& v = get(key);
    if (!v.is_list) return Vector::Constant(1, to_double(v, key));
    Vector out(static_cast<Index>(v.items.size()));
    for (std::size_t i = 0; i < v.items.size(); ++i) out[static_cast<Index>(i)] = to_double(v.items[i], key);
    return out;
  }

  /// List of equal-length numeric rows.
  Matrix get_matrix(const std::string& key) const {
    const auto& v = get(key);
    if (!v.is_list) throw ConfigError("config key '" + key + "': expected a list of rows");
    if (v.items.empty()) return Matrix(0, 0);
    const std::size_t cols = v.items.front().items.size();
    Matrix out(static_cast<Index>(v.items.size()), static_cast<Index>(cols));
    for (std::size_t r = 0; r < v.items.size(); ++r) {
      const auto& row = v.items[r];
      if (!row.is_list || row.items.size() != cols)
        throw ConfigError("config key '" + key + "': rows must be lists of equal length");
      for (std::size_t c = 0; c < cols; ++c)
        out(static_cast<Index>(r), static_cast<Index>(c)) = to_double(row.items[c], key);
    }
    return out;
  }

 private:
  static double to_double(const ConfigValue& v, const std::string& key) {
    if (v.is_list) throw ConfigError("config key '" + key + "': expected a number, got a list");
    const std::string& s = v.scalar;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError("config key '" + key + "': '" + s + "' is not a number");
    return out;
  }

  std::map<std::string, ConfigValue> values_;
};

}  // namespace netsync
