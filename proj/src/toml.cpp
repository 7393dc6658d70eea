#include "etreg/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace etreg::toml {

bool Value::as_bool() const {
  if (!is_bool()) throw ValidationError("expected a boolean value");
  return std::get<bool>(v_);
}

double Value::as_number() const {
  if (!is_number()) throw ValidationError("expected a numeric value");
  return std::get<double>(v_);
}

const std::string& Value::as_string() const {
  if (!is_string()) throw ValidationError("expected a string value");
  return std::get<std::string>(v_);
}

const Value::Array& Value::as_array() const {
  if (!is_array()) throw ValidationError("expected an array value");
  return std::get<Array>(v_);
}

namespace {

class Scanner {
 public:
  Scanner(std::string_view text, const std::string& origin) : text_(text), origin_(origin) {}

  Table run() {
    Table table;
    std::string prefix;
    skip_space_and_comments(true);
    while (!at_end()) {
      if (peek() == '[') {
        prefix = parse_table_header();
      } else {
        auto [key, value] = parse_key_value();
        const std::string full = prefix.empty() ? key : prefix + "." + key;
        if (table.count(full)) fail("duplicate key '" + full + "'");
        table.emplace(full, std::move(value));
      }
      skip_space_and_comments(true);
    }
    return table;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(origin_ + ":" + std::to_string(line_) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_space_and_comments(bool cross_lines) {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (cross_lines && c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  static bool is_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_bare_key() {
    std::string key;
    while (!at_end() && is_key_char(peek())) key.push_back(advance());
    if (key.empty()) fail("expected a key");
    return key;
  }

  std::string parse_table_header() {
    advance();  // '['
    skip_space_and_comments(false);
    const std::string name = parse_bare_key();
    skip_space_and_comments(false);
    if (at_end() || peek() != ']') fail("expected ']' after table name");
    advance();
    expect_line_end();
    return name;
  }

  std::pair<std::string, Value> parse_key_value() {
    const std::string key = parse_bare_key();
    skip_space_and_comments(false);
    if (at_end() || peek() != '=') fail("expected '=' after key '" + key + "'");
    advance();
    skip_space_and_comments(false);
    Value v = parse_value();
    expect_line_end();
    return {key, std::move(v)};
  }

  void expect_line_end() {
    skip_space_and_comments(false);
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    advance();
  }

  Value parse_value() {
    if (at_end()) fail("expected a value");
    const char c = peek();
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_boolean();
    return parse_number();
  }

  Value parse_string() {
    advance();  // opening quote
    std::string out;
    while (!at_end() && peek() != '"') {
      char c = advance();
      if (c == '\n') fail("unterminated string");
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        const char esc = advance();
        switch (esc) {
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          default: fail("unsupported escape sequence");
        }
      }
      out.push_back(c);
    }
    if (at_end()) fail("unterminated string");
    advance();  // closing quote
    return Value(std::move(out));
  }

  Value parse_boolean() {
    std::string word;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek())))
      word.push_back(advance());
    if (word == "true") return Value(true);
    if (word == "false") return Value(false);
    fail("unknown literal '" + word + "'");
  }

  Value parse_number() {
    std::string num;
    while (!at_end()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
          c == 'e' || c == 'E') {
        num.push_back(advance());
      } else {
        break;
      }
    }
    if (num.empty()) fail("expected a number");
    char* end = nullptr;
    const double v = std::strtod(num.c_str(), &end);
    if (end == nullptr || *end != '\0') fail("malformed number '" + num + "'");
    return Value(v);
  }

  Value parse_array() {
    advance();  // '['
    Value::Array items;
    while (true) {
      skip_space_and_comments(true);
      if (at_end()) fail("unterminated array");
      if (peek() == ']') {
        advance();
        break;
      }
      items.push_back(parse_value());
      skip_space_and_comments(true);
      if (at_end()) fail("unterminated array");
      if (peek() == ',') {
        advance();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    return Value(std::move(items));
  }

  std::string_view text_;
  std::string origin_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

Table parse(std::string_view text, const std::string& origin) {
  return Scanner(text, origin).run();
}

Table parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

}  // namespace etreg::toml
