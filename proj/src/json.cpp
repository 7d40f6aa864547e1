#include "jsw/json.hpp"

#include <algorithm>
#include <cstdio>

#include "jsw/error.hpp"

namespace jsw {

bool json_equal(const JsonValue& a, const JsonValue& b) {
  if (a.type() != b.type()) return false;
  switch (a.type()) {
    case JsonValue::Type::Null: return true;
    case JsonValue::Type::Bool: return a.as_bool() == b.as_bool();
    case JsonValue::Type::Num: return Decimal::cmp(a.as_num(), b.as_num()) == 0;
    case JsonValue::Type::Str: return a.as_str() == b.as_str();
    case JsonValue::Type::Object: {
      const auto& ao = a.as_object();
      const auto& bo = b.as_object();
      if (ao.size() != bo.size()) return false;
      auto it = bo.begin();
      for (const auto& [k, v] : ao) {
        if (it->first != k || !json_equal(v, it->second)) return false;
        ++it;
      }
      return true;
    }
    case JsonValue::Type::Array: {
      const auto& aa = a.as_array();
      const auto& ba = b.as_array();
      if (aa.size() != ba.size()) return false;
      for (size_t i = 0; i < aa.size(); ++i) {
        if (!json_equal(aa[i], ba[i])) return false;
      }
      return true;
    }
  }
  return false;
}

uint64_t json_depth(const JsonValue& j) {
  switch (j.type()) {
    case JsonValue::Type::Object: {
      uint64_t m = 0;
      for (const auto& [k, v] : j.as_object()) m = std::max(m, json_depth(v));
      return 1 + m;
    }
    case JsonValue::Type::Array: {
      uint64_t m = 0;
      for (const auto& v : j.as_array()) m = std::max(m, json_depth(v));
      return 1 + m;
    }
    default: return 1;
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  JsonValue parse() {
    skip_ws();
    JsonValue v = parse_value(0);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing content after JSON value");
    return v;
  }

 private:
  static constexpr size_t kMaxDepth = 512;

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  char peek() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    return text_[pos_];
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  bool consume_word(std::string_view w) {
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  JsonValue parse_value(size_t depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    switch (peek()) {
      case 'n':
        if (!consume_word("null")) fail("invalid literal");
        return JsonValue::null();
      case 't':
        if (!consume_word("true")) fail("invalid literal");
        return JsonValue::boolean(true);
      case 'f':
        if (!consume_word("false")) fail("invalid literal");
        return JsonValue::boolean(false);
      case '"': return JsonValue::string(parse_string());
      case '{': return parse_object(depth);
      case '[': return parse_array(depth);
      default: return parse_number();
    }
  }

  JsonValue parse_object(size_t depth) {
    expect('{');
    JsonValue::Object obj;
    skip_ws();
    if (consume('}')) return JsonValue::object(std::move(obj));
    while (true) {
      skip_ws();
      if (peek() != '"') fail("expected member name");
      std::string key = parse_string();
      if (obj.count(key)) {
        throw Error(ErrorCode::DuplicateKey, "duplicate member name \"" + key + "\"");
      }
      skip_ws();
      expect(':');
      skip_ws();
      obj.emplace(std::move(key), parse_value(depth + 1));
      skip_ws();
      if (consume(',')) continue;
      expect('}');
      break;
    }
    return JsonValue::object(std::move(obj));
  }

  JsonValue parse_array(size_t depth) {
    expect('[');
    JsonValue::Array arr;
    skip_ws();
    if (consume(']')) return JsonValue::array(std::move(arr));
    while (true) {
      skip_ws();
      arr.push_back(parse_value(depth + 1));
      skip_ws();
      if (consume(',')) continue;
      expect(']');
      break;
    }
    return JsonValue::array(std::move(arr));
  }

  uint32_t parse_hex4() {
    if (pos_ + 4 > text_.size()) fail("truncated \\u escape");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      char c = text_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= c - '0';
      else if (c >= 'a' && c <= 'f') v |= c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v |= c - 'A' + 10;
      else fail("invalid \\u escape");
    }
    return v;
  }

  void append_utf8(std::string& out, uint32_t cp) {
    if (cp <= 0x7F) {
      out += static_cast<char>(cp);
    } else if (cp <= 0x7FF) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0xFFFF) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string parse_string() {
    expect('"');
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (c == '"') {
        ++pos_;
        return out;
      }
      if (c == '\\') {
        ++pos_;
        char e = peek();
        ++pos_;
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case '/': out += '/'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          case 'u': {
            uint32_t cp = parse_hex4();
            if (cp >= 0xD800 && cp <= 0xDBFF) {
              if (pos_ + 1 < text_.size() && text_[pos_] == '\\' && text_[pos_ + 1] == 'u') {
                pos_ += 2;
                uint32_t lo = parse_hex4();
                if (lo < 0xDC00 || lo > 0xDFFF) fail("invalid low surrogate");
                cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
              } else {
                fail("lone high surrogate");
              }
            } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
              fail("lone low surrogate");
            }
            append_utf8(out, cp);
            break;
          }
          default: fail("invalid escape");
        }
        continue;
      }
      if (c < 0x20) fail("unescaped control character");
      out += static_cast<char>(c);
      ++pos_;
    }
  }

  JsonValue parse_number() {
    size_t start = pos_;
    if (consume('-')) {}
    if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_]))) fail("invalid number");
    while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (consume('.')) {
      if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_]))) fail("invalid number");
      while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_]))) fail("invalid number");
      while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    return JsonValue::number(Decimal::parse(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void serialize_into(std::string& out, const JsonValue& j, int indent, int level) {
  auto newline = [&](int lv) {
    if (indent >= 0) {
      out += '\n';
      out += std::string(static_cast<size_t>(indent) * lv, ' ');
    }
  };
  switch (j.type()) {
    case JsonValue::Type::Null: out += "null"; break;
    case JsonValue::Type::Bool: out += j.as_bool() ? "true" : "false"; break;
    case JsonValue::Type::Num: out += j.as_num().to_string(); break;
    case JsonValue::Type::Str: escape_into(out, j.as_str()); break;
    case JsonValue::Type::Object: {
      const auto& obj = j.as_object();
      if (obj.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : obj) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        escape_into(out, k);
        out += ':';
        if (indent >= 0) out += ' ';
        serialize_into(out, v, indent, level + 1);
      }
      newline(level);
      out += '}';
      break;
    }
    case JsonValue::Type::Array: {
      const auto& arr = j.as_array();
      if (arr.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& v : arr) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        serialize_into(out, v, indent, level + 1);
      }
      newline(level);
      out += ']';
      break;
    }
  }
}

}  // namespace

JsonValue parse_json(std::string_view text) { return Parser(text).parse(); }

std::string serialize_json(const JsonValue& j) {
  std::string out;
  serialize_into(out, j, -1, 0);
  return out;
}

std::string serialize_json_pretty(const JsonValue& j) {
  std::string out;
  serialize_into(out, j, 2, 0);
  return out;
}

std::u32string utf8_to_codepoints(std::string_view s) {
  std::u32string out;
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    uint32_t cp;
    int extra;
    if (c < 0x80) {
      cp = c;
      extra = 0;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c >> 3) == 0x1E) {
      cp = c & 0x07;
      extra = 3;
    } else {
      throw Error(ErrorCode::ParseError, "invalid UTF-8");
    }
    if (i + extra >= s.size()) throw Error(ErrorCode::ParseError, "truncated UTF-8");
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) throw Error(ErrorCode::ParseError, "invalid UTF-8 continuation");
      cp = (cp << 6) | (cc & 0x3F);
    }
    i += extra + 1;
    out += static_cast<char32_t>(cp);
  }
  return out;
}

std::string codepoints_to_utf8(const std::u32string& cps) {
  std::string out;
  for (char32_t cp : cps) {
    uint32_t v = static_cast<uint32_t>(cp);
    if (v <= 0x7F) {
      out += static_cast<char>(v);
    } else if (v <= 0x7FF) {
      out += static_cast<char>(0xC0 | (v >> 6));
      out += static_cast<char>(0x80 | (v & 0x3F));
    } else if (v <= 0xFFFF) {
      out += static_cast<char>(0xE0 | (v >> 12));
      out += static_cast<char>(0x80 | ((v >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (v & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (v >> 18));
      out += static_cast<char>(0x80 | ((v >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((v >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (v & 0x3F));
    }
  }
  return out;
}

}  // namespace jsw
