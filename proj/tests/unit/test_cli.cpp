#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include <unistd.h>

#include "dri/common/io.hpp"
#include "dri/cli.hpp"

using namespace dri;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures{DRI_FIXTURE_DIR};

struct Run {
  int code;
  nlohmann::json summary;
  std::string err;
};

Run dri_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  nlohmann::json summary = nlohmann::json::parse(out.str(), nullptr, false);
  return {code, summary, err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dri-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static inline int counter = 0;
};

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = io::read_file(e.path());
  return files;
}

void pipeline(const TempDir& d) {
  const auto set = kFixtures / "corpus50";
  REQUIRE(dri_run({"extract", "--samples", (set / "samples.jsonl").string(), "--cache", (set / "cache").string(),
                   "--out", d / "ext", "--mode", "replay", "--concurrency", "8"})
              .code == 0);
  REQUIRE(dri_run({"score", "--split", "train=" + d / "ext", "--out-dir", d / "scores"}).code == 0);
  const auto scores = d / "scores/train.scores.jsonl";
  REQUIRE(dri_run({"analyze", "--scores", scores, "--out", d / "hist"}).code == 0);
  REQUIRE(dri_run({"balance", "--scores", scores, "--per-bin", "2", "--seed", "5", "--policy", "take-all", "--out",
                   d / "balanced.jsonl"})
              .code == 0);
  REQUIRE(dri_run({"filter", "--scores", scores, "--lo", "0.2", "--hi", "1", "--out", d / "range.jsonl"}).code == 0);
  REQUIRE(dri_run({"curriculum", "--scores", scores, "--epochs", "3", "--seed", "9", "--mode", "weighted", "--out",
                   d / "manifest.json"})
              .code == 0);
  REQUIRE(dri_run({"rewards", "--scores", scores, "--out", d / "rewards.json"}).code == 0);
}

}  // namespace

TEST_CASE("exit code map") {
  CHECK(cli::exit_code_for(ErrorCode::InvalidInput) == 2);
  CHECK(cli::exit_code_for(ErrorCode::Schema) == 2);
  CHECK(cli::exit_code_for(ErrorCode::ReplayMiss) == 3);
  CHECK(cli::exit_code_for(ErrorCode::ExtractionFailed) == 3);
  CHECK(cli::exit_code_for(ErrorCode::UnrepairableResponse) == 3);
  CHECK(cli::exit_code_for(ErrorCode::EmptyCorpus) == 4);
  CHECK(cli::exit_code_for(ErrorCode::InsufficientBin) == 4);
  CHECK(cli::exit_code_for(ErrorCode::Transport) == 5);
}

TEST_CASE("full replay pipeline is byte-reproducible") {
  TempDir a, b;
  pipeline(a);
  pipeline(b);
  const auto x = snapshot(a.path), y = snapshot(b.path);
  CHECK(x.size() == 12);
  CHECK(x == y);
  const auto manifest = nlohmann::json::parse(x.at("manifest.json"));
  CHECK(manifest["phase1"].size() == 50);
}

TEST_CASE("golden scores through the CLI") {
  TempDir d;
  const auto set = kFixtures / "golden";
  const auto e = dri_run({"extract", "--samples", (set / "samples.jsonl").string(), "--cache",
                          (set / "cache").string(), "--out", d / "ext", "--mode", "replay"});
  REQUIRE(e.code == 0);
  CHECK(e.summary["requests"] == 0);
  REQUIRE(dri_run({"score", "--split", d / "ext", "--out-dir", d / "s"}).code == 0);
  const auto rows = io::read_jsonl(d.path / "s" / "ext.scores.jsonl");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["s_raw"] == 83.0);
  CHECK(rows[1]["s_opt"] == nlohmann::json{27.0, 151.0, 15.0, 24.0});
}

TEST_CASE("frozen statistics score a second split on the same scale") {
  TempDir d;
  const auto set = kFixtures / "golden";
  REQUIRE(dri_run({"extract", "--samples", (set / "samples.jsonl").string(), "--cache", (set / "cache").string(),
                   "--out", d / "ext", "--mode", "replay"})
              .code == 0);
  REQUIRE(dri_run({"score", "--split", "train=" + d / "ext", "--out-dir", d / "fit"}).code == 0);
  const auto r = dri_run({"score", "--split", "test=" + d / "ext", "--stats-in", d / "fit/stats.json", "--out-dir",
                          d / "apply"});
  REQUIRE(r.code == 0);
  CHECK(io::read_file(d.path / "fit/train.scores.jsonl") == io::read_file(d.path / "apply/test.scores.jsonl"));
}

TEST_CASE("missing extractions are listed, not fatal") {
  TempDir d;
  io::write_file_atomic(d.path / "samples.jsonl",
                        io::read_file(kFixtures / "golden/samples.jsonl") +
                            R"({"id": "new", "kind": "BQA", "context": "c", "question": "q", "answer": "yes"})" "\n");
  const auto e = dri_run({"extract", "--samples", d / "samples.jsonl", "--cache",
                          (kFixtures / "golden/cache").string(), "--out", d / "ext", "--mode", "replay",
                          "--max-failure-rate", "0.5"});
  CHECK(e.code == 0);
  CHECK(e.summary["failed"] == 1);
  const auto s = dri_run({"score", "--split", "train=" + d / "ext", "--out-dir", d / "s"});
  CHECK(s.code == 0);
  CHECK(s.summary["splits"]["train"]["missing"] == nlohmann::json{"new"});
  CHECK(io::read_jsonl(d.path / "s/train.missing.jsonl").size() == 1);
}

TEST_CASE("failure rate above the threshold exits 3") {
  TempDir d;
  io::write_file_atomic(d.path / "samples.jsonl",
                        R"({"id": "new", "kind": "BQA", "context": "c", "question": "q", "answer": "yes"})" "\n");
  const auto e = dri_run({"extract", "--samples", d / "samples.jsonl", "--cache",
                          (kFixtures / "golden/cache").string(), "--out", d / "ext", "--mode", "replay"});
  CHECK(e.code == 3);
  CHECK(fs::exists(d.path / "ext/failures.jsonl"));
}

TEST_CASE("replay against an empty cache is an input error") {
  TempDir d;
  fs::create_directories(d.path / "empty");
  const auto e = dri_run({"extract", "--samples", (kFixtures / "golden/samples.jsonl").string(), "--cache",
                          d / "empty", "--out", d / "ext", "--mode", "replay"});
  CHECK(e.code == 2);
}

TEST_CASE("unreachable endpoint exits 5") {
  TempDir d;
  const auto e = dri_run({"extract", "--samples", (kFixtures / "golden/samples.jsonl").string(), "--cache",
                          d / "cache", "--out", d / "ext", "--endpoint", "http://127.0.0.1:1/v1/chat/completions",
                          "--max-retries", "0", "--backoff-ms", "1", "--timeout", "2"});
  CHECK(e.code == 5);
}

TEST_CASE("malformed JSONL names the line") {
  TempDir d;
  io::write_file_atomic(d.path / "scores.jsonl", "{\"id\": \"a\", \"s_norm\": 0.5}\n{\"id\": \"b\", \"s_norm\": \n");
  const auto r = dri_run({"filter", "--scores", d / "scores.jsonl", "--out", d / "x.jsonl"});
  CHECK(r.code == 2);
  CHECK(r.summary["error"] == "InvalidInput");
  CHECK(r.summary["message"].get<std::string>().find("scores.jsonl:2") != std::string::npos);
}

TEST_CASE("short bins and empty corpora exit 4") {
  TempDir d;
  io::write_file_atomic(d.path / "scores.jsonl", "{\"id\": \"a\", \"s_norm\": 0.5}\n");
  CHECK(dri_run({"balance", "--scores", d / "scores.jsonl", "--out", d / "b.jsonl"}).code == 4);
  io::write_file_atomic(d.path / "empty.jsonl", "");
  CHECK(dri_run({"curriculum", "--scores", d / "empty.jsonl", "--out", d / "m.json"}).code == 4);
}

TEST_CASE("bad arguments exit 2") {
  TempDir d;
  io::write_file_atomic(d.path / "scores.jsonl", "{\"id\": \"a\", \"s_norm\": 0.5}\n");
  CHECK(dri_run({"filter", "--scores", d / "scores.jsonl", "--lo", "0.6", "--hi", "0.4", "--out", d / "x"}).code == 2);
  CHECK(dri_run({"curriculum", "--scores", d / "scores.jsonl", "--epochs", "1", "--out", d / "m.json"}).code == 2);
  CHECK(dri_run({"frobnicate"}).code == 2);
  CHECK(dri_run({"filter"}).code == 2);
  CHECK(dri_run({"filter", "--scores", d / "nope.jsonl", "--out", d / "x"}).code == 2);
}

TEST_CASE("filter keeps the inclusive top end") {
  TempDir d;
  io::write_file_atomic(d.path / "scores.jsonl",
                        "{\"id\": \"a\", \"s_norm\": 0.2}\n{\"id\": \"b\", \"s_norm\": 1.0}\n{\"id\": \"c\", \"s_norm\": 0.1}\n");
  REQUIRE(dri_run({"filter", "--scores", d / "scores.jsonl", "--lo", "0.2", "--hi", "1.0", "--out", d / "x.jsonl"})
              .code == 0);
  CHECK(io::read_file(d.path / "x.jsonl") == "{\"id\":\"a\"}\n{\"id\":\"b\"}\n");
}

TEST_CASE("config file supplies defaults") {
  TempDir d;
  io::write_file_atomic(d.path / "scores.jsonl", "{\"id\": \"a\", \"s_norm\": 0.2}\n{\"id\": \"b\", \"s_norm\": 0.7}\n");
  io::write_file_atomic(d.path / "dri.toml", "[rewards]\nlambda = 3.0\n");
  REQUIRE(dri_run({"--config", d / "dri.toml", "rewards", "--scores", d / "scores.jsonl", "--out", d / "r.json"})
              .code == 0);
  const auto spec = nlohmann::json::parse(io::read_file(d.path / "r.json"));
  CHECK(spec["lambda"] == 3.0);
  CHECK(spec["rewards"]["b"] == 4.0);
}
