#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jsw/decimal.hpp"

namespace jsw {

// Immutable JSON value tree. Objects are unordered member sets (std::map
// keeps one canonical order); numbers are exact decimals.
class JsonValue {
 public:
  using Object = std::map<std::string, JsonValue>;
  using Array = std::vector<JsonValue>;
  enum class Type : uint8_t { Null, Bool, Num, Str, Object, Array };

  JsonValue() : data_(nullptr) {}
  static JsonValue null() { return JsonValue(); }
  static JsonValue boolean(bool b) { return JsonValue(b); }
  static JsonValue number(Decimal d) { return JsonValue(std::move(d)); }
  static JsonValue number(int64_t v) { return JsonValue(Decimal::from_int(v)); }
  static JsonValue string(std::string s) { return JsonValue(std::move(s)); }
  static JsonValue object(Object o) { return JsonValue(std::move(o)); }
  static JsonValue array(Array a) { return JsonValue(std::move(a)); }

  Type type() const { return static_cast<Type>(data_.index()); }
  bool is_null() const { return type() == Type::Null; }
  bool is_bool() const { return type() == Type::Bool; }
  bool is_num() const { return type() == Type::Num; }
  bool is_str() const { return type() == Type::Str; }
  bool is_object() const { return type() == Type::Object; }
  bool is_array() const { return type() == Type::Array; }

  bool as_bool() const { return std::get<bool>(data_); }
  const Decimal& as_num() const { return std::get<Decimal>(data_); }
  const std::string& as_str() const { return std::get<std::string>(data_); }
  const Object& as_object() const { return std::get<Object>(data_); }
  const Array& as_array() const { return std::get<Array>(data_); }

 private:
  explicit JsonValue(bool b) : data_(b) {}
  explicit JsonValue(Decimal d) : data_(std::move(d)) {}
  explicit JsonValue(std::string s) : data_(std::move(s)) {}
  explicit JsonValue(Object o) : data_(std::move(o)) {}
  explicit JsonValue(Array a) : data_(std::move(a)) {}

  std::variant<std::nullptr_t, bool, Decimal, std::string, Object, Array> data_;
};

// Equality: objects as member sets, arrays ordered, decimals by value.
bool json_equal(const JsonValue& a, const JsonValue& b);

// 1 for base values, 1 + max child depth for containers (max over {} is 0).
uint64_t json_depth(const JsonValue& j);

// RFC 8259 parse; rejects duplicate member names.
JsonValue parse_json(std::string_view text);

// Canonical serialization: sorted member names, shortest round-trippable
// decimal form, minimal string escapes.
std::string serialize_json(const JsonValue& j);
std::string serialize_json_pretty(const JsonValue& j);

// UTF-8 <-> codepoint helpers (strings in the data model are Unicode).
std::u32string utf8_to_codepoints(std::string_view s);
std::string codepoints_to_utf8(const std::u32string& cps);

}  // namespace jsw
