#pragma once

// Minimal TOML reader covering what scenario files use: [tables], bare keys,
// strings, numbers, booleans, (nested) arrays, and # comments. Keys are
// flattened to "table.key". Anything outside this subset is a ParseError
// with file/line context.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "etreg/errors.hpp"

namespace etreg::toml {

class Value {
 public:
  using Array = std::vector<Value>;

  Value() : v_(0.0) {}
  explicit Value(bool b) : v_(b) {}
  explicit Value(double d) : v_(d) {}
  explicit Value(std::string s) : v_(std::move(s)) {}
  explicit Value(Array a) : v_(std::move(a)) {}

  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_number() const { return std::holds_alternative<double>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_array() const { return std::holds_alternative<Array>(v_); }

  bool as_bool() const;
  double as_number() const;
  const std::string& as_string() const;
  const Array& as_array() const;

 private:
  std::variant<bool, double, std::string, Array> v_;
};

using Table = std::map<std::string, Value>;

Table parse(std::string_view text, const std::string& origin);
Table parse_file(const std::string& path);

}  // namespace etreg::toml
