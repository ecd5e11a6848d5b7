#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dri/extract/elements.hpp"

namespace dri::score {

struct ScoreOptions {
  // Count → and ↔ as operations in step scores. Off by default: the
  // operation count covers AND/OR/NOT only.
  bool include_implication = false;
};

// |E|·D̄² + |P| + |C|, with D̄ the mean expression depth (0 when E is empty).
double context_score(const extract::LogicalElements& elements);

// |R|·D̄_R² + Σ_k (1 + ops_k)·depth_k² over the option's preconditions R and
// deduction steps k.
double option_score(const extract::OptionAnalysis& analysis, bool include_implication = false);

double raw_score(double s_ctx, std::span<const double> s_opt);

struct CorpusStats {
  std::size_t n = 0;
  double mu = 0.0;      // mean of log(s_raw + 1)
  double sigma2 = 0.0;  // population variance of log(s_raw + 1)
  double gamma = 1.0;
  double beta = 0.0;
  double epsilon = 1e-5;
};

// Throws EmptyCorpus on an empty list and InvalidInput on a negative or
// non-finite score.
CorpusStats fit_stats(std::span<const double> raw_scores);

// logistic(γ·(log(s_raw + 1) − μ)/√(σ² + ε) + β). The result is kept inside
// the open interval (0, 1) even where the logistic rounds to 0 or 1 in
// double precision.
double normalize(double s_raw, const CorpusStats& stats);

struct DriBreakdown {
  std::string id;
  double s_ctx = 0.0;
  std::vector<double> s_opt;
  double s_raw = 0.0;
  double s_norm = 0.0;
  std::size_t parse_failures = 0;
};

// Everything except s_norm, which needs corpus statistics.
DriBreakdown raw_breakdown(const std::string& id, const extract::LogicalElements& elements,
                           const extract::OptionAnalyses& analyses, const ScoreOptions& options = {});

// Throws MissingExtraction when either stage's output is absent.
DriBreakdown score_sample(const std::string& id, const extract::LogicalElements* elements,
                          const extract::OptionAnalyses* analyses, const CorpusStats& stats,
                          const ScoreOptions& options = {});

}  // namespace dri::score
