#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dri/common/error.hpp"

namespace dri::extract {

class UnrepairableResponse : public Error {
 public:
  explicit UnrepairableResponse(std::string raw, const std::string& why)
      : Error(ErrorCode::UnrepairableResponse, "unrepairable response: " + why), raw_(std::move(raw)) {}

  // The untouched response body, kept for audit.
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

// Recovers a JSON value from a chat reply: strips ``` fences, takes the
// outermost bracketed value, drops trailing commas, converts single-quoted
// strings and Python literals, and escapes bare LaTeX backslashes inside
// strings (\text, \neg, \( ...) that would otherwise be invalid or silently
// turn into tab/newline escapes.
nlohmann::json repair_json(std::string_view raw);

}  // namespace dri::extract
