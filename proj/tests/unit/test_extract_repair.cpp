#include <doctest.h>

#include "dri/extract/json_repair.hpp"

using dri::extract::repair_json;
using dri::extract::UnrepairableResponse;

TEST_CASE("clean JSON passes through") {
  CHECK(repair_json(R"({"a": [1, 2]})") == nlohmann::json::parse(R"({"a": [1, 2]})"));
}

TEST_CASE("fences and surrounding prose are dropped") {
  const auto v = repair_json("Here you go:\n```json\n{\"a\": 1}\n```\nHope this helps.");
  CHECK(v["a"] == 1);
  CHECK(repair_json("Result: [1, 2, 3] as requested")[2] == 3);
}

TEST_CASE("trailing commas") {
  CHECK(repair_json(R"({"a": [1, 2,], "b": 3,})")["a"].size() == 2);
}

TEST_CASE("python literals and single quotes") {
  const auto v = repair_json(R"({'ok': True, 'none': None, 'no': False, 'txt': 'it\'s "quoted"'})");
  CHECK(v["ok"] == true);
  CHECK(v["none"].is_null());
  CHECK(v["no"] == false);
  CHECK(v["txt"] == "it's \"quoted\"");
}

TEST_CASE("literal words inside strings are left alone") {
  CHECK(repair_json(R"({"a": "True story"})")["a"] == "True story");
}

TEST_CASE("bare LaTeX backslashes") {
  // \t and \n would otherwise decode to tab and newline.
  const auto v = repair_json(R"~({"e": "\( \text{A} \land \neg \text{B} \)"})~");
  CHECK(v["e"] == R"~(\( \text{A} \land \neg \text{B} \))~");
  CHECK(repair_json(R"~({"e": "\\( \\text{A} \\)"})~")["e"] == R"~(\( \text{A} \))~");
}

TEST_CASE("genuine escapes survive") {
  CHECK(repair_json(R"({"e": "line\nbreak \"q\" é"})")["e"] == "line\nbreak \"q\" \xC3\xA9");
}

TEST_CASE("raw newlines inside strings") {
  CHECK(repair_json("{\"a\": \"two\nlines\"}")["a"] == "two\nlines");
}

TEST_CASE("unrepairable replies keep the raw text") {
  try {
    (void)repair_json("I cannot help with that.");
    FAIL("expected UnrepairableResponse");
  } catch (const UnrepairableResponse& e) {
    CHECK(e.code() == dri::ErrorCode::UnrepairableResponse);
    CHECK(e.raw() == "I cannot help with that.");
  }
  CHECK_THROWS_AS((void)repair_json(R"({"a": [1, 2})"), UnrepairableResponse);
  CHECK_THROWS_AS((void)repair_json(R"({"a": 1 "b": 2})"), UnrepairableResponse);
}
