#include "divint/toml_lite.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

#include "divint/scalar.hpp"

namespace divint {

using nlohmann::json;

namespace {

struct TomlParser {
  std::string_view s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    size_t line = 1;
    for (size_t i = 0; i < pos && i < s.size(); ++i)
      if (s[i] == '\n') ++line;
    throw structural_error("TOML line " + std::to_string(line) + ": " + what);
  }

  void skip_ws(bool newlines) {
    for (;;) {
      while (pos < s.size() &&
             (s[pos] == ' ' || s[pos] == '\t' || (newlines && (s[pos] == '\n' || s[pos] == '\r'))))
        ++pos;
      if (pos < s.size() && s[pos] == '#') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
        continue;
      }
      return;
    }
  }

  bool eat(char c) {
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string bare_or_quoted_key() {
    skip_ws(false);
    if (pos < s.size() && (s[pos] == '"' || s[pos] == '\'')) return string_value();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                              s[pos] == '-'))
      ++pos;
    if (pos == start) fail("expected a key");
    return std::string(s.substr(start, pos - start));
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts{bare_or_quoted_key()};
    skip_ws(false);
    while (eat('.')) {
      parts.push_back(bare_or_quoted_key());
      skip_ws(false);
    }
    return parts;
  }

  std::string string_value() {
    char quote = s[pos];
    ++pos;
    std::string out;
    while (pos < s.size() && s[pos] != quote) {
      if (quote == '"' && s[pos] == '\\') {
        ++pos;
        if (pos >= s.size()) fail("dangling escape");
        switch (s[pos]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail("unsupported escape");
        }
        ++pos;
        continue;
      }
      out += s[pos++];
    }
    if (pos >= s.size()) fail("unterminated string");
    ++pos;
    return out;
  }

  json value() {
    skip_ws(false);
    if (pos >= s.size()) fail("expected a value");
    char c = s[pos];
    if (c == '"' || c == '\'') return string_value();
    if (c == '[') {
      ++pos;
      json arr = json::array();
      skip_ws(true);
      if (eat(']')) return arr;
      for (;;) {
        arr.push_back(value());
        skip_ws(true);
        if (eat(',')) {
          skip_ws(true);
          if (eat(']')) return arr;  // trailing comma
          continue;
        }
        if (eat(']')) return arr;
        fail("expected ',' or ']' in array");
      }
    }
    if (c == '{') {
      ++pos;
      json obj = json::object();
      skip_ws(false);
      if (eat('}')) return obj;
      for (;;) {
        auto parts = dotted_key();
        skip_ws(false);
        if (!eat('=')) fail("expected '=' in inline table");
        json* slot = &obj;
        for (size_t i = 0; i + 1 < parts.size(); ++i) slot = &(*slot)[parts[i]];
        (*slot)[parts.back()] = value();
        skip_ws(false);
        if (eat(',')) {
          skip_ws(false);
          continue;
        }
        if (eat('}')) return obj;
        fail("expected ',' or '}' in inline table");
      }
    }
    if (s.compare(pos, 4, "true") == 0) {
      pos += 4;
      return true;
    }
    if (s.compare(pos, 5, "false") == 0) {
      pos += 5;
      return false;
    }
    // integer (signed)
    size_t start = pos;
    if (c == '+' || c == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("unsupported value (the subset has strings, integers, booleans, arrays, tables)");
    return std::stoll(std::string(s.substr(start, pos - start)));
  }

  json parse() {
    json root = json::object();
    json* table = &root;
    skip_ws(true);
    while (pos < s.size()) {
      if (s[pos] == '[') {
        ++pos;
        bool array_of_tables = eat('[');
        auto parts = dotted_key();
        skip_ws(false);
        if (!eat(']')) fail("expected ']' after table header");
        if (array_of_tables && !eat(']')) fail("expected ']]' after array-of-tables header");
        json* slot = &root;
        for (size_t i = 0; i + 1 < parts.size(); ++i) slot = &(*slot)[parts[i]];
        if (array_of_tables) {
          json& arr = (*slot)[parts.back()];
          if (arr.is_null()) arr = json::array();
          arr.push_back(json::object());
          table = &arr.back();
        } else {
          table = &(*slot)[parts.back()];
          if (table->is_null()) *table = json::object();
        }
      } else {
        auto parts = dotted_key();
        skip_ws(false);
        if (!eat('=')) fail("expected '=' after key");
        json* slot = table;
        for (size_t i = 0; i + 1 < parts.size(); ++i) slot = &(*slot)[parts[i]];
        if (slot->contains(parts.back())) fail("duplicate key " + parts.back());
        (*slot)[parts.back()] = value();
      }
      skip_ws(false);
      if (pos < s.size() && s[pos] != '\n' && s[pos] != '\r') fail("trailing content on line");
      skip_ws(true);
    }
    return root;
  }
};

}  // namespace

json toml_lite_parse(std::string_view text) {
  TomlParser p{text};
  return p.parse();
}

}  // namespace divint
