#include "dri/cli.hpp"

#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "dri/commands.hpp"

namespace dri::cli {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyCorpus:
    case ErrorCode::InsufficientBin:
      return kDegenerateCorpus;
    case ErrorCode::Transport:
      return kTransport;
    case ErrorCode::ExtractionFailed:
    case ErrorCode::UnrepairableResponse:
    case ErrorCode::ReplayMiss:
      return kExtractionFailures;
    default:
      return kInputError;
  }
}

namespace {

std::pair<std::string, fs::path> split_arg(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) return {fs::path(s).filename().string(), fs::path(s)};
  return {s.substr(0, eq), fs::path(s.substr(eq + 1))};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data reasoning intensity: extraction, scoring, analytics and curricula", "dri"};
  app.set_config("--config", "", "TOML config; command-line flags take precedence");
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();

  // extract
  ExtractOptions ex;
  std::string mode = "live";
  std::size_t max_retries = 4;
  long long timeout_s = 60, backoff_ms = 1000;
  auto* extract = app.add_subcommand("extract", "Run decomposition and option analysis over a samples JSONL");
  extract->add_option("--samples", ex.samples, "Samples JSONL")->required();
  extract->add_option("--out", ex.out, "Output directory")->required();
  extract->add_option("--cache", ex.cache, "Response cache directory")->required();
  extract->add_option("--endpoint", ex.llm.endpoint, "Chat-completions URL");
  extract->add_option("--model", ex.llm.model)->capture_default_str();
  extract->add_option("--temperature", ex.llm.temperature)->capture_default_str();
  extract->add_option("--concurrency", ex.llm.concurrency)->capture_default_str();
  extract->add_option("--max-retries", max_retries)->capture_default_str();
  extract->add_option("--timeout", timeout_s, "Request timeout in seconds")->capture_default_str();
  extract->add_option("--backoff-ms", backoff_ms, "Initial retry delay")->capture_default_str();
  extract->add_option("--mode", mode)->check(CLI::IsMember({"live", "replay"}))->capture_default_str();
  extract->add_option("--max-failure-rate", ex.max_failure_rate)->capture_default_str();

  // score
  ScoreOptions sc;
  std::vector<std::string> split_args;
  std::string stats_in;
  auto* score = app.add_subcommand("score", "Score extractions and fit or apply corpus statistics");
  score->add_option("--split", split_args, "name=dir of extraction outputs (repeatable)")->required();
  score->add_option("--reference", sc.reference, "Split used to fit statistics (default: first)");
  score->add_option("--stats-in", stats_in, "Frozen statistics JSON to reuse");
  score->add_option("--out-dir", sc.out_dir)->required();
  score->add_flag("--include-implication", sc.include_implication, "Count → and ↔ as step operations");

  // analyze
  AnalyzeOptions an;
  std::string an_ids, an_pred;
  auto* analyze = app.add_subcommand("analyze", "Histogram of scores, optionally joined with predictions");
  analyze->add_option("--scores", an.scores)->required();
  analyze->add_option("--ids", an_ids, "Restrict to an id-list JSONL");
  analyze->add_option("--predictions", an_pred, "JSONL of {\"id\",\"correct\"}");
  analyze->add_option("--scheme", an.scheme, "uniform20, uniform:N or balanced16")->capture_default_str();
  analyze->add_option("--out", an.out, "Output prefix (.json and .csv)")->required();

  // balance
  BalanceOptions ba;
  auto* balance = app.add_subcommand("balance", "Draw a balanced benchmark over the 16 balanced bins");
  balance->add_option("--scores", ba.scores)->required();
  balance->add_option("--per-bin", ba.per_bin)->capture_default_str();
  balance->add_option("--seed", ba.seed)->capture_default_str();
  balance->add_option("--policy", ba.policy)->check(CLI::IsMember({"strict", "take-all"}))->capture_default_str();
  balance->add_option("--out", ba.out)->required();

  // filter
  FilterOptions fi;
  auto* filter = app.add_subcommand("filter", "Keep ids with lo <= score < hi (hi = 1 inclusive)");
  filter->add_option("--scores", fi.scores)->required();
  filter->add_option("--lo", fi.lo)->capture_default_str();
  filter->add_option("--hi", fi.hi)->capture_default_str();
  filter->add_option("--out", fi.out)->required();

  // curriculum
  CurriculumOptions cu;
  std::string cu_ids;
  auto* curriculum = app.add_subcommand("curriculum", "Emit a two-phase training manifest");
  curriculum->add_option("--scores", cu.scores)->required();
  curriculum->add_option("--ids", cu_ids, "Restrict to an id-list JSONL");
  curriculum->add_option("--epochs", cu.epochs)->capture_default_str();
  curriculum->add_option("--seed", cu.seed)->capture_default_str();
  curriculum->add_option("--mode", cu.mode)->check(CLI::IsMember({"descending", "weighted"}))->capture_default_str();
  curriculum->add_option("--min-weight", cu.min_weight, "Uniform floor mixed into weights")->capture_default_str();
  curriculum->add_option("--out", cu.out)->required();

  // rewards
  RewardsOptions re;
  std::string re_ids;
  auto* rewards = app.add_subcommand("rewards", "Emit score-scaled accuracy rewards");
  rewards->add_option("--scores", re.scores)->required();
  rewards->add_option("--ids", re_ids, "Restrict to an id-list JSONL");
  rewards->add_option("--base-reward", re.base_reward)->capture_default_str();
  rewards->add_option("--lambda", re.lambda)->capture_default_str();
  rewards->add_option("--format-reward", re.format_reward)->capture_default_str();
  rewards->add_option("--out", re.out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dri: " << e.what() << "\n";
    return kInputError;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("dri", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::from_str(log_level));
  spdlog::set_default_logger(logger);

  try {
    CommandResult result;
    if (*extract) {
      ex.llm.mode = mode == "replay" ? extract::LlmMode::Replay : extract::LlmMode::Live;
      ex.llm.max_attempts = max_retries + 1;
      ex.llm.timeout = std::chrono::seconds(timeout_s);
      ex.llm.backoff_initial = std::chrono::milliseconds(backoff_ms);
      if (const char* key = std::getenv("DRI_API_KEY")) ex.llm.api_key = key;
      result = cmd_extract(ex);
    } else if (*score) {
      for (const auto& s : split_args) sc.splits.push_back(split_arg(s));
      if (!stats_in.empty()) sc.stats_in = stats_in;
      result = cmd_score(sc);
    } else if (*analyze) {
      if (!an_ids.empty()) an.ids = an_ids;
      if (!an_pred.empty()) an.predictions = an_pred;
      result = cmd_analyze(an);
    } else if (*balance) {
      result = cmd_balance(ba);
    } else if (*filter) {
      result = cmd_filter(fi);
    } else if (*curriculum) {
      if (!cu_ids.empty()) cu.ids = cu_ids;
      result = cmd_curriculum(cu);
    } else if (*rewards) {
      if (!re_ids.empty()) re.ids = re_ids;
      result = cmd_rewards(re);
    }
    result.summary["exit_code"] = result.exit_code;
    out << result.summary.dump() << "\n";
    return result.exit_code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    nlohmann::ordered_json summary;
    summary["command"] = app.get_subcommands().front()->get_name();
    summary["error"] = to_string(e.code());
    summary["message"] = e.what();
    summary["exit_code"] = code;
    out << summary.dump() << "\n";
    spdlog::error("{}", e.what());
    return code;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kInputError;
  }
}

}  // namespace dri::cli
