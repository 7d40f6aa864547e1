#include "doctest.h"

#include <functional>

#include "jsw/error.hpp"
#include "jsw/json.hpp"
#include "support.hpp"

using namespace jsw;

TEST_CASE("json_equal treats objects as member sets") {
  JsonValue a = parse_json(R"({"a":1,"b":2})");
  JsonValue b = parse_json(R"({"b":2,"a":1})");
  CHECK(json_equal(a, b));
}

TEST_CASE("json_equal keeps arrays ordered") {
  CHECK_FALSE(json_equal(parse_json("[1,2]"), parse_json("[2,1]")));
}

TEST_CASE("json_equal compares decimals by value") {
  CHECK(json_equal(parse_json("1.0"), parse_json("1")));
  CHECK(json_equal(parse_json("0.5e1"), parse_json("5")));
  CHECK_FALSE(json_equal(parse_json("1.5"), parse_json("15")));
}

TEST_CASE("depth of base values, containers, empty containers") {
  CHECK(json_depth(parse_json("42")) == 1);
  CHECK(json_depth(parse_json("[]")) == 1);
  CHECK(json_depth(parse_json("{}")) == 1);
  CHECK(json_depth(parse_json(R"({"a":[1]})")) == 3);
}

TEST_CASE("depth equals 1 + max over children (recursive oracle)") {
  std::function<uint64_t(const JsonValue&)> oracle = [&](const JsonValue& j) -> uint64_t {
    uint64_t m = 0;
    if (j.is_object()) {
      for (const auto& [k, v] : j.as_object()) m = std::max(m, oracle(v));
      return 1 + m;
    }
    if (j.is_array()) {
      for (const auto& v : j.as_array()) m = std::max(m, oracle(v));
      return 1 + m;
    }
    return 1;
  };
  for (const auto& v : test::small_values(3)) CHECK(json_depth(v) == oracle(v));
}

TEST_CASE("json_equal is an equivalence relation on a small domain") {
  auto domain = test::small_values(4);
  for (const auto& v : domain) CHECK(json_equal(v, v));
  size_t n = std::min<size_t>(domain.size(), 60);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      CHECK(json_equal(domain[i], domain[j]) == json_equal(domain[j], domain[i]));
      for (size_t k = 0; k < n; ++k) {
        if (json_equal(domain[i], domain[j]) && json_equal(domain[j], domain[k])) {
          CHECK(json_equal(domain[i], domain[k]));
        }
      }
    }
  }
}

TEST_CASE("duplicate member names are rejected at parse time") {
  CHECK_THROWS_AS(parse_json(R"({"a":1,"a":2})"), Error);
}

TEST_CASE("numbers survive round trips exactly") {
  for (const char* t : {"0", "-0.5", "123456789012345678901234567890", "1e9", "0.0001",
                        "-3.14", "5e-7", "2.5", "1e100"}) {
    JsonValue v = parse_json(t);
    JsonValue back = parse_json(serialize_json(v));
    CHECK(json_equal(v, back));
  }
}

TEST_CASE("canonical serialization sorts member names") {
  JsonValue v = parse_json(R"({"b":1,"a":[true,null],"c":{"z":"s","y":0.10}})");
  CHECK(serialize_json(v) == R"({"a":[true,null],"b":1,"c":{"y":0.1,"z":"s"}})");
}

TEST_CASE("string escapes round-trip") {
  // note: \u escapes spelled with doubled backslashes; gcc rewrites
  // universal character names even inside raw literals
  JsonValue v = parse_json("\"a\\\"b\\\\c\\nd\\u00e9\\u0001\"");
  JsonValue back = parse_json(serialize_json(v));
  CHECK(json_equal(v, back));
  CHECK(v.as_str() == std::string("a\"b\\c\nd\xc3\xa9\x01"));
}

TEST_CASE("surrogate pairs decode to astral codepoints") {
  JsonValue v = parse_json("\"\\ud83d\\ude00\"");
  auto cps = utf8_to_codepoints(v.as_str());
  REQUIRE(cps.size() == 1);
  CHECK(static_cast<uint32_t>(cps[0]) == 0x1F600);
  CHECK_THROWS_AS(parse_json("\"\\ud83d\""), Error);
}

TEST_CASE("decimal arithmetic basics") {
  auto d = [](const char* s) { return Decimal::parse(s); };
  CHECK(Decimal::cmp(d("1.5"), d("1.50")) == 0);
  CHECK(Decimal::cmp(d("-2"), d("1")) < 0);
  CHECK(Decimal::add(d("0.1"), d("0.2")) == d("0.3"));
  CHECK(Decimal::mul(d("2.5"), d("4")) == d("10"));
  CHECK(Decimal::is_multiple_of(d("5"), d("2.5")));
  CHECK_FALSE(Decimal::is_multiple_of(d("5"), d("2")));
  CHECK(Decimal::is_multiple_of(d("-10"), d("2.5")));
  CHECK(Decimal::lcm(d("0.2"), d("0.5")) == d("1"));
  CHECK(Decimal::lcm(d("2"), d("3")) == d("6"));
  CHECK(Decimal::ceil_div(d("7"), d("2")) == d("4"));
  CHECK(Decimal::ceil_div(d("-7"), d("2")) == d("-3"));
  CHECK(Decimal::ceil_div(d("8"), d("2")) == d("4"));
}

TEST_CASE("u64 primality") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(5));
  CHECK(is_prime_u64(11));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(91));
  CHECK(is_prime_u64(1000000007ull));
  CHECK_FALSE(is_prime_u64(1000000007ull * 3));
}
