#include "dri/commands.hpp"

#include <map>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "dri/analytics/histogram.hpp"
#include "dri/analytics/subset.hpp"
#include "dri/cli.hpp"
#include "dri/common/io.hpp"
#include "dri/curriculum/manifest.hpp"
#include "dri/curriculum/rewards.hpp"
#include "dri/extract/extractor.hpp"
#include "dri/score/score_io.hpp"

namespace dri::cli {

namespace {

using score::ScoredId;

// Scores restricted to (and ordered by) an optional id list.
std::vector<ScoredId> select_scores(const fs::path& scores_path, const std::optional<fs::path>& ids_path) {
  auto scores = score::load_score_table(scores_path);
  if (!ids_path) return scores;
  std::unordered_map<std::string, double> table;
  for (const auto& s : scores) table.emplace(s.id, s.score);
  std::vector<ScoredId> out;
  for (auto& id : analytics::load_id_list(*ids_path)) {
    const auto it = table.find(id);
    if (it == table.end()) throw Error(ErrorCode::MissingScore, "id " + id + " has no score in " + scores_path.string());
    out.push_back({std::move(id), it->second});
  }
  return out;
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) { io::write_file_atomic(path, j.dump(2) + "\n"); }

}  // namespace

CommandResult cmd_extract(const ExtractOptions& o, std::shared_ptr<extract::ChatTransport> transport) {
  if (!(o.max_failure_rate >= 0.0 && o.max_failure_rate <= 1.0))
    throw Error(ErrorCode::InvalidParameter, "--max-failure-rate must lie in [0, 1]");
  const auto samples = extract::load_samples(o.samples);
  extract::ResponseCache cache(o.cache);
  if (o.llm.mode == extract::LlmMode::Replay && cache.empty())
    throw Error(ErrorCode::InvalidInput, "replay mode needs a populated cache at " + o.cache.string());

  extract::Extractor extractor(o.llm, cache, std::move(transport));
  spdlog::info("extracting {} samples ({} mode, concurrency {})", samples.size(),
               o.llm.mode == extract::LlmMode::Live ? "live" : "replay", o.llm.concurrency);
  const auto run = extractor.extract_corpus(samples);
  extract::write_extraction(o.out, run);

  std::map<std::string, std::size_t> by_code;
  bool transport_failure = false;
  for (const auto& f : run.failures) {
    ++by_code[std::string(to_string(f.cause))];
    transport_failure = transport_failure || f.cause == ErrorCode::Transport;
    spdlog::warn("{} [{}]: {}", f.id, f.stage, f.message);
  }

  CommandResult r;
  r.summary["command"] = "extract";
  r.summary["samples"] = run.samples;
  r.summary["extracted"] = run.results.size();
  r.summary["failed"] = run.failures.size();
  r.summary["failures_by_code"] = by_code;
  r.summary["requests"] = run.requests;
  r.summary["cache_hits"] = run.cache_hits;
  r.summary["expressions"] = run.expressions;
  r.summary["parse_failure_rate"] = run.parse_failure_rate();
  r.summary["out"] = o.out.string();
  if (transport_failure)
    r.exit_code = kTransport;
  else if (run.failure_rate() > o.max_failure_rate)
    r.exit_code = kExtractionFailures;
  return r;
}

CommandResult cmd_score(const ScoreOptions& o) {
  if (o.splits.empty()) throw Error(ErrorCode::InvalidInput, "no --split given");
  score::ScoreOptions opts;
  opts.include_implication = o.include_implication;

  struct Loaded {
    std::string name;
    std::vector<score::DriBreakdown> rows;
    std::vector<std::string> missing;
  };
  std::vector<Loaded> splits;
  for (const auto& [name, dir] : o.splits) {
    for (const auto& s : splits)
      if (s.name == name) throw Error(ErrorCode::InvalidInput, "split '" + name + "' given twice");
    auto loaded = score::load_split(dir);
    Loaded l{name, {}, std::move(loaded.missing)};
    for (const auto& e : loaded.complete) l.rows.push_back(score::raw_breakdown(e.id, e.elements, e.analyses, opts));
    for (const auto& id : l.missing) spdlog::warn("MissingExtraction: {} ({})", id, name);
    splits.push_back(std::move(l));
  }

  score::CorpusStats stats;
  if (o.stats_in) {
    stats = score::stats_from_json(nlohmann::json::parse(io::read_file(*o.stats_in)));
  } else {
    const std::string ref = o.reference.empty() ? splits.front().name : o.reference;
    const auto it = std::find_if(splits.begin(), splits.end(), [&](const Loaded& l) { return l.name == ref; });
    if (it == splits.end()) throw Error(ErrorCode::InvalidInput, "reference split '" + ref + "' not among --split");
    std::vector<double> raw;
    for (const auto& b : it->rows) raw.push_back(b.s_raw);
    stats = score::fit_stats(raw);
  }

  fs::create_directories(o.out_dir);
  CommandResult r;
  r.summary["command"] = "score";
  r.summary["stats"] = score::stats_to_json(stats);
  auto split_summary = nlohmann::ordered_json::object();
  for (auto& l : splits) {
    for (auto& b : l.rows) b.s_norm = score::normalize(b.s_raw, stats);
    score::write_scores(o.out_dir / (l.name + ".scores.jsonl"), l.rows);
    std::vector<nlohmann::ordered_json> missing_rows;
    for (const auto& id : l.missing) missing_rows.push_back({{"id", id}, {"code", "MissingExtraction"}});
    io::write_file_atomic(o.out_dir / (l.name + ".missing.jsonl"), io::to_jsonl(missing_rows));
    split_summary[l.name] = {{"scored", l.rows.size()}, {"missing", l.missing}};
  }
  write_json(o.out_dir / "stats.json", score::stats_to_json(stats));
  r.summary["splits"] = std::move(split_summary);
  r.summary["out_dir"] = o.out_dir.string();
  return r;
}

CommandResult cmd_analyze(const AnalyzeOptions& o) {
  const auto scores = select_scores(o.scores, o.ids);
  const auto scheme = analytics::BinScheme::parse(o.scheme);
  auto hist = analytics::histogram(scores, scheme);
  if (o.predictions) hist = analytics::join_error_rates(std::move(hist), analytics::load_predictions(*o.predictions), scores);
  const auto summary = analytics::summarize(scores, hist);

  auto json_path = o.out;
  json_path += ".json";
  auto csv_path = o.out;
  csv_path += ".csv";
  write_json(json_path, analytics::histogram_to_json(hist, summary));
  io::write_file_atomic(csv_path, analytics::histogram_to_csv(hist));

  CommandResult r;
  r.summary["command"] = "analyze";
  r.summary["scheme"] = hist.scheme;
  r.summary["n"] = hist.total();
  r.summary["counts"] = hist.counts;
  r.summary["mean"] = summary.mean;
  r.summary["binned_mean"] = summary.binned_mean;
  r.summary["json"] = json_path.string();
  r.summary["csv"] = csv_path.string();
  return r;
}

CommandResult cmd_balance(const BalanceOptions& o) {
  const auto scores = score::load_score_table(o.scores);
  const auto subset = analytics::balanced_subset(scores, o.per_bin, o.seed, analytics::parse_policy(o.policy));
  for (const auto& w : subset.warnings) spdlog::warn("{}", w);
  io::write_file_atomic(o.out, analytics::picks_to_jsonl(subset.picks));

  std::vector<std::size_t> per_bin(analytics::BinScheme::balanced16().bins(), 0);
  for (const auto& p : subset.picks) ++per_bin[p.bin];
  CommandResult r;
  r.summary["command"] = "balance";
  r.summary["ids"] = subset.picks.size();
  r.summary["per_bin"] = per_bin;
  r.summary["seed"] = o.seed;
  r.summary["warnings"] = subset.warnings;
  r.summary["out"] = o.out.string();
  return r;
}

CommandResult cmd_filter(const FilterOptions& o) {
  const auto scores = score::load_score_table(o.scores);
  const auto ids = analytics::range_filter(scores, o.lo, o.hi);
  io::write_file_atomic(o.out, analytics::ids_to_jsonl(ids));
  CommandResult r;
  r.summary["command"] = "filter";
  r.summary["lo"] = o.lo;
  r.summary["hi"] = o.hi;
  r.summary["kept"] = ids.size();
  r.summary["of"] = scores.size();
  r.summary["out"] = o.out.string();
  return r;
}

CommandResult cmd_curriculum(const CurriculumOptions& o) {
  const auto all = score::load_score_table(o.scores);
  const auto table = curriculum::make_score_table(all);
  std::vector<std::string> ids;
  if (o.ids) {
    ids = analytics::load_id_list(*o.ids);
  } else {
    for (const auto& s : all) ids.push_back(s.id);
  }
  const auto manifest =
      curriculum::build_manifest(ids, table, o.epochs, o.seed, curriculum::parse_mode(o.mode), o.min_weight);
  write_json(o.out, curriculum::manifest_to_json(manifest));
  CommandResult r;
  r.summary["command"] = "curriculum";
  r.summary["ids"] = ids.size();
  r.summary["epochs"] = o.epochs;
  r.summary["mode"] = curriculum::to_string(manifest.mode);
  r.summary["seed"] = o.seed;
  r.summary["out"] = o.out.string();
  return r;
}

CommandResult cmd_rewards(const RewardsOptions& o) {
  const auto scores = select_scores(o.scores, o.ids);
  const auto spec = curriculum::reward_spec(scores, o.base_reward, o.lambda, o.format_reward);
  write_json(o.out, curriculum::reward_spec_to_json(spec));
  double lo = spec.rewards.front().second, hi = lo;
  for (const auto& [_, v] : spec.rewards) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CommandResult r;
  r.summary["command"] = "rewards";
  r.summary["ids"] = spec.rewards.size();
  r.summary["min_reward"] = lo;
  r.summary["max_reward"] = hi;
  r.summary["out"] = o.out.string();
  return r;
}

}  // namespace dri::cli
