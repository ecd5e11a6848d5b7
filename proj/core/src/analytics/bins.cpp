#include "dri/analytics/bins.hpp"

#include <algorithm>
#include <charconv>

#include "dri/common/error.hpp"

namespace dri::analytics {

BinScheme BinScheme::uniform(std::size_t bins) {
  if (bins < 1) throw Error(ErrorCode::InvalidParameter, "a uniform scheme needs at least one bin");
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) edges[i] = static_cast<double>(i) / static_cast<double>(bins);
  return BinScheme("uniform" + std::to_string(bins), std::move(edges));
}

BinScheme BinScheme::balanced16() {
  std::vector<double> edges{0.0};
  // Integer hundredths so that 0.25, 0.3, ... are the nearest doubles.
  for (int i = 0; i <= 14; ++i) edges.push_back((20.0 + 5.0 * i) / 100.0);
  edges.push_back(1.0);
  return BinScheme("balanced16", std::move(edges));
}

BinScheme BinScheme::parse(std::string_view name) {
  if (name == "balanced16") return balanced16();
  if (name == "uniform") return uniform(20);
  if (name.starts_with("uniform")) {
    auto digits = name.substr(7);
    if (digits.starts_with(":")) digits.remove_prefix(1);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 1) return uniform(n);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown bin scheme '" + std::string(name) + "'");
}

std::size_t BinScheme::bin_index(const std::vector<double>& edges, double score) {
  if (!(score >= edges.front() && score <= edges.back()))
    throw Error(ErrorCode::OutOfRangeScore, "score " + std::to_string(score) + " outside [0, 1]");
  if (score == edges.front()) return 0;
  // First upper edge >= score.
  const auto it = std::lower_bound(edges.begin() + 1, edges.end(), score);
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

}  // namespace dri::analytics
