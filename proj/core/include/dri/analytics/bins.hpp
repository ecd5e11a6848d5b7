#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dri::analytics {

// A partition of [0, 1] into intervals (lo, hi], the first of which also
// holds 0.
class BinScheme {
 public:
  static BinScheme uniform(std::size_t bins);
  // (0, 0.2], fourteen 0.05-wide bins over (0.2, 0.9], (0.9, 1].
  static BinScheme balanced16();
  // "balanced16", "uniform" (20 bins), "uniform20" or "uniform:20".
  static BinScheme parse(std::string_view name);

  std::size_t bins() const noexcept { return edges_.size() - 1; }
  const std::vector<double>& edges() const noexcept { return edges_; }
  const std::string& name() const noexcept { return name_; }

  // Throws OutOfRangeScore for scores outside [0, 1] (and NaN).
  std::size_t bin_of(double score) const { return bin_index(edges_, score); }

  static std::size_t bin_index(const std::vector<double>& edges, double score);

 private:
  BinScheme(std::string name, std::vector<double> edges) : name_(std::move(name)), edges_(std::move(edges)) {}
  std::string name_;
  std::vector<double> edges_;
};

}  // namespace dri::analytics
