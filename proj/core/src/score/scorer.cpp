#include "dri/score/scorer.hpp"

#include <cmath>
#include <limits>

#include "dri/common/error.hpp"
#include "dri/logic/metrics.hpp"

namespace dri::score {

namespace {

// n·(mean depth)²; 0 for an empty list.
double mean_depth_term(const std::vector<extract::Expression>& exprs) {
  if (exprs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : exprs) sum += static_cast<double>(logic::depth(e.formula));
  const double n = static_cast<double>(exprs.size());
  const double mean = sum / n;
  return n * mean * mean;
}

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double context_score(const extract::LogicalElements& elements) {
  return mean_depth_term(elements.expressions) + static_cast<double>(elements.predicate_count()) +
         static_cast<double>(elements.constant_count());
}

double option_score(const extract::OptionAnalysis& analysis, bool include_implication) {
  double total = mean_depth_term(analysis.preconditions);
  for (const auto& step : analysis.steps) {
    const auto& f = step.expression.formula;
    const double d = static_cast<double>(logic::depth(f));
    total += (1.0 + static_cast<double>(logic::op_count(f, include_implication))) * d * d;
  }
  return total;
}

double raw_score(double s_ctx, std::span<const double> s_opt) {
  double total = s_ctx;
  for (double s : s_opt) total += s;
  return total;
}

CorpusStats fit_stats(std::span<const double> raw_scores) {
  if (raw_scores.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot fit statistics on an empty corpus");
  std::vector<double> logs;
  logs.reserve(raw_scores.size());
  for (double s : raw_scores) {
    if (!std::isfinite(s) || s < 0) throw Error(ErrorCode::InvalidInput, "raw scores must be finite and >= 0");
    logs.push_back(std::log1p(s));
  }
  const double n = static_cast<double>(logs.size());
  double sum = 0.0;
  for (double v : logs) sum += v;
  const double mu = sum / n;
  double ss = 0.0;
  for (double v : logs) ss += (v - mu) * (v - mu);
  CorpusStats stats;
  stats.n = logs.size();
  stats.mu = mu;
  stats.sigma2 = ss / n;
  return stats;
}

double normalize(double s_raw, const CorpusStats& stats) {
  const double z = stats.gamma * (std::log1p(s_raw) - stats.mu) / std::sqrt(stats.sigma2 + stats.epsilon) + stats.beta;
  const double s = logistic(z);
  constexpr double lo = std::numeric_limits<double>::denorm_min();
  const double hi = std::nextafter(1.0, 0.0);
  return s < lo ? lo : (s > hi ? hi : s);
}

DriBreakdown raw_breakdown(const std::string& id, const extract::LogicalElements& elements,
                           const extract::OptionAnalyses& analyses, const ScoreOptions& options) {
  DriBreakdown b;
  b.id = id;
  b.s_ctx = context_score(elements);
  b.parse_failures = elements.parse_failures();
  for (const auto& option : analyses.options) {
    b.s_opt.push_back(option_score(option, options.include_implication));
    b.parse_failures += option.parse_failures();
  }
  b.s_raw = raw_score(b.s_ctx, b.s_opt);
  return b;
}

DriBreakdown score_sample(const std::string& id, const extract::LogicalElements* elements,
                          const extract::OptionAnalyses* analyses, const CorpusStats& stats,
                          const ScoreOptions& options) {
  if (!elements || !analyses) throw Error(ErrorCode::MissingExtraction, "no extraction for sample " + id);
  DriBreakdown b = raw_breakdown(id, *elements, *analyses, options);
  b.s_norm = normalize(b.s_raw, stats);
  return b;
}

}  // namespace dri::score
