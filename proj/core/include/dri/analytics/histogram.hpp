#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dri/analytics/bins.hpp"
#include "dri/score/score_io.hpp"

namespace dri::analytics {

using score::ScoredId;

struct Histogram {
  std::string scheme;
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  // Per-bin wrong/total once predictions are joined; empty bins hold nullopt.
  std::optional<std::vector<std::optional<double>>> error_rate;

  std::size_t total() const noexcept;
};

// Throws OutOfRangeScore (tagged with the id) for a score outside [0, 1].
Histogram histogram(std::span<const ScoredId> scores, const BinScheme& scheme);

struct Prediction {
  std::string id;
  bool correct = false;
};

// Throws UnknownId when a prediction has no score.
Histogram join_error_rates(Histogram hist, std::span<const Prediction> predictions,
                           std::span<const ScoredId> scores);

struct ScoreSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;         // population
  double binned_mean = 0.0;    // bin midpoints weighted by counts
  double binned_stddev = 0.0;
};

ScoreSummary summarize(std::span<const ScoredId> scores, const Histogram& hist);

// {"scheme","edges","counts","error_rate","summary"}; error_rate is null
// when no predictions were joined and holds null for empty bins.
nlohmann::ordered_json histogram_to_json(const Histogram& hist, const ScoreSummary& summary);

// bin,lo,hi,count,error_rate with an empty error_rate cell for absent values.
std::string histogram_to_csv(const Histogram& hist);

std::vector<Prediction> load_predictions(const std::filesystem::path& path);

}  // namespace dri::analytics
