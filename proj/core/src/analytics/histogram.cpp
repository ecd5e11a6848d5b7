#include "dri/analytics/histogram.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "dri/common/error.hpp"
#include "dri/common/io.hpp"

namespace dri::analytics {

std::size_t Histogram::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

Histogram histogram(std::span<const ScoredId> scores, const BinScheme& scheme) {
  Histogram h;
  h.scheme = scheme.name();
  h.edges = scheme.edges();
  h.counts.assign(scheme.bins(), 0);
  for (const auto& s : scores) {
    try {
      ++h.counts[scheme.bin_of(s.score)];
    } catch (const Error& e) {
      throw Error(e.code(), "sample " + s.id + ": " + e.what());
    }
  }
  return h;
}

Histogram join_error_rates(Histogram hist, std::span<const Prediction> predictions,
                           std::span<const ScoredId> scores) {
  std::unordered_map<std::string, double> by_id;
  for (const auto& s : scores) by_id.emplace(s.id, s.score);
  std::vector<std::size_t> total(hist.counts.size(), 0), wrong(hist.counts.size(), 0);
  for (const auto& p : predictions) {
    const auto it = by_id.find(p.id);
    if (it == by_id.end()) throw Error(ErrorCode::UnknownId, "prediction for unscored id " + p.id);
    const auto bin = BinScheme::bin_index(hist.edges, it->second);
    ++total[bin];
    if (!p.correct) ++wrong[bin];
  }
  std::vector<std::optional<double>> rates(hist.counts.size());
  for (std::size_t i = 0; i < rates.size(); ++i)
    if (total[i] > 0) rates[i] = static_cast<double>(wrong[i]) / static_cast<double>(total[i]);
  hist.error_rate = std::move(rates);
  return hist;
}

ScoreSummary summarize(std::span<const ScoredId> scores, const Histogram& hist) {
  ScoreSummary s;
  s.n = scores.size();
  if (s.n == 0) return s;
  const double n = static_cast<double>(s.n);
  double sum = 0.0;
  for (const auto& x : scores) sum += x.score;
  s.mean = sum / n;
  double ss = 0.0;
  for (const auto& x : scores) ss += (x.score - s.mean) * (x.score - s.mean);
  s.stddev = std::sqrt(ss / n);

  const double total = static_cast<double>(hist.total());
  if (total > 0) {
    double bm = 0.0;
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
      bm += static_cast<double>(hist.counts[i]) * 0.5 * (hist.edges[i] + hist.edges[i + 1]);
    s.binned_mean = bm / total;
    double bss = 0.0;
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
      const double mid = 0.5 * (hist.edges[i] + hist.edges[i + 1]);
      bss += static_cast<double>(hist.counts[i]) * (mid - s.binned_mean) * (mid - s.binned_mean);
    }
    s.binned_stddev = std::sqrt(bss / total);
  }
  return s;
}

nlohmann::ordered_json histogram_to_json(const Histogram& hist, const ScoreSummary& summary) {
  nlohmann::ordered_json j;
  j["scheme"] = hist.scheme;
  j["edges"] = hist.edges;
  j["counts"] = hist.counts;
  if (hist.error_rate) {
    auto rates = nlohmann::ordered_json::array();
    for (const auto& r : *hist.error_rate) rates.push_back(r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr));
    j["error_rate"] = std::move(rates);
  } else {
    j["error_rate"] = nullptr;
  }
  j["summary"] = {{"n", summary.n},
                  {"mean", summary.mean},
                  {"std", summary.stddev},
                  {"binned_mean", summary.binned_mean},
                  {"binned_std", summary.binned_stddev}};
  return j;
}

std::string histogram_to_csv(const Histogram& hist) {
  std::string out = "bin,lo,hi,count,error_rate\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    std::string rate;
    if (hist.error_rate && (*hist.error_rate)[i]) rate = fmt::format("{}", *(*hist.error_rate)[i]);
    out += fmt::format("{},{},{},{},{}\n", i, hist.edges[i], hist.edges[i + 1], hist.counts[i], rate);
  }
  return out;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  io::for_each_jsonl(path, [&](std::size_t, const nlohmann::json& j) {
    Prediction p;
    if (!j.contains("id")) throw Error(ErrorCode::InvalidInput, "prediction without \"id\"");
    p.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    if (!j.contains("correct") || !j["correct"].is_boolean())
      throw Error(ErrorCode::InvalidInput, "prediction needs a boolean \"correct\"");
    p.correct = j["correct"].get<bool>();
    out.push_back(std::move(p));
  });
  return out;
}

}  // namespace dri::analytics
