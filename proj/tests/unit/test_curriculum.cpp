#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "dri/common/random.hpp"
#include "dri/curriculum/manifest.hpp"
#include "dri/curriculum/rewards.hpp"

using namespace dri;
using namespace dri::curriculum;

namespace {

std::vector<score::ScoredId> corpus(Rng& rng, std::size_t n) {
  std::vector<score::ScoredId> out;
  for (std::size_t i = 0; i < n; ++i) {
    // Coarse grid so ties happen.
    const double s = static_cast<double>(uniform_below(rng, 50)) / 49.0;
    out.push_back({"id" + std::to_string(1000 + uniform_below(rng, 1'000'000)) + "_" + std::to_string(i), s});
  }
  return out;
}

std::vector<std::string> ids_of(const std::vector<score::ScoredId>& c) {
  std::vector<std::string> out;
  for (const auto& s : c) out.push_back(s.id);
  return out;
}

std::string schema_error(const nlohmann::json& j) {
  try {
    (void)manifest_from_json(j);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Schema);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("phase 1 shuffle") {
  CHECK(phase1_order({"only"}, 3) == std::vector<std::string>{"only"});
  const std::vector<std::string> ids{"a", "b", "c", "d", "e", "f"};
  CHECK(phase1_order(ids, 9) == phase1_order(ids, 9));
  auto p = phase1_order(ids, 9);
  std::sort(p.begin(), p.end());
  CHECK(p == ids);
  CHECK_THROWS_AS((void)phase1_order({"a", "a"}, 1), Error);
  CHECK_THROWS_AS((void)phase1_order({}, 1), Error);
}

TEST_CASE("phase 1 positions are uniform across seeds") {
  const std::vector<std::string> ids{"a", "b", "c", "d", "e"};
  std::array<std::array<int, 5>, 5> counts{};
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto p = phase1_order(ids, seed);
    for (std::size_t pos = 0; pos < 5; ++pos) ++counts[pos][static_cast<std::size_t>(p[pos][0] - 'a')];
  }
  for (const auto& row : counts) {
    double chi2 = 0;
    for (int c : row) chi2 += (c - 200.0) * (c - 200.0) / 200.0;
    CHECK(chi2 < 18.47);  // 4 degrees of freedom, p = 0.001
  }
}

TEST_CASE("descending order") {
  const ScoreTable t{{"a", 0.9}, {"b", 0.1}, {"c", 0.5}};
  const std::vector<std::string> ids{"a", "b", "c"};
  CHECK(phase2_descending(ids, t) == std::vector<std::string>{"a", "c", "b"});
  const ScoreTable same{{"z", 0.5}, {"m", 0.5}, {"b", 0.5}};
  const std::vector<std::string> zmb{"z", "m", "b"};
  CHECK(phase2_descending(zmb, same) == std::vector<std::string>{"b", "m", "z"});
  const std::vector<std::string> acb{"a", "c", "b"};
  CHECK(phase2_descending(acb, t) == acb);
  const std::vector<std::string> missing{"a", "q"};
  CHECK_THROWS_AS((void)phase2_descending(missing, t), Error);
}

TEST_CASE("weights") {
  const std::vector<std::string> ids{"a", "b", "c"};
  const auto w = phase2_weights(ids, ScoreTable{{"a", 0.1}, {"b", 0.3}, {"c", 0.5}});
  CHECK(w[0].second == 0.0);
  CHECK(w[1].second == 1.0 / 3.0);
  CHECK(w[2].second == 2.0 / 3.0);

  const std::vector<std::string> two{"lo", "hi"};
  const auto ends = phase2_weights(two, ScoreTable{{"lo", 0.2}, {"hi", 0.7}});
  CHECK(ends[0].second == 0.0);
  CHECK(ends[1].second == 1.0);

  const auto flat = phase2_weights(ids, ScoreTable{{"a", 0.4}, {"b", 0.4}, {"c", 0.4}});
  for (const auto& [_, p] : flat) CHECK(p == doctest::Approx(1.0 / 3.0));

  const auto floor = phase2_weights(ids, ScoreTable{{"a", 0.1}, {"b", 0.3}, {"c", 0.5}}, 0.1);
  CHECK(floor[0].second == doctest::Approx(0.1));
  CHECK(floor[2].second == doctest::Approx(0.1 + 0.7 * 2.0 / 3.0));
  CHECK_THROWS_AS((void)phase2_weights(ids, ScoreTable{{"a", 0.1}, {"b", 0.3}, {"c", 0.5}}, 0.5), Error);
}

TEST_CASE("manifest layout") {
  const std::vector<std::string> ids{"x", "y", "z"};
  const ScoreTable t{{"x", 0.2}, {"y", 0.8}, {"z", 0.5}};
  const auto m = build_manifest(ids, t, 3, 42, Phase2Mode::Descending);
  const auto j = manifest_to_json(m);
  CHECK(j["version"] == 1);
  CHECK(j["seed"] == 42);
  CHECK(j["epochs"] == 3);
  CHECK(j["mode"] == "descending");
  CHECK(j["phase2"]["order"] == nlohmann::json{"y", "z", "x"});
  CHECK_THROWS_AS((void)build_manifest(ids, t, 1, 42, Phase2Mode::Descending), Error);

  const auto w = manifest_to_json(build_manifest(ids, t, 2, 42, Phase2Mode::Weighted));
  CHECK(w["mode"] == "weighted");
  CHECK(w["phase2"]["weights"].size() == 3);
  CHECK(w["phase2"]["weights"].begin().key() == "x");
}

TEST_CASE("manifest round-trip is byte-identical") {
  Rng rng(41);
  for (auto mode : {Phase2Mode::Descending, Phase2Mode::Weighted}) {
    const auto c = corpus(rng, 60);
    const auto m = build_manifest(ids_of(c), make_score_table(c), 4, 17, mode);
    const auto text = manifest_to_json(m).dump(2);
    CHECK(manifest_to_json(manifest_from_json(nlohmann::json::parse(text))).dump(2) == text);
  }
}

TEST_CASE("manifest schema errors name the field") {
  const std::vector<std::string> ids{"a", "b", "c"};
  const ScoreTable t{{"a", 0.1}, {"b", 0.3}, {"c", 0.5}};
  const nlohmann::json good = manifest_to_json(build_manifest(ids, t, 2, 1, Phase2Mode::Weighted));

  auto j = good;
  j["phase2"]["weights"] = {{"a", 0.2}, {"b", 0.3}, {"c", 0.4}};  // sums to 0.9
  CHECK(schema_error(j).find("phase2.weights") != std::string::npos);
  j = good;
  j["version"] = 2;
  CHECK(schema_error(j).find("version") != std::string::npos);
  j = good;
  j["epochs"] = 1;
  CHECK(schema_error(j).find("epochs") != std::string::npos);
  j = good;
  j["phase1"] = {"a", "a", "c"};
  CHECK(schema_error(j).find("phase1") != std::string::npos);
  j = good;
  j["phase2"]["weights"]["a"] = -0.1;
  CHECK(schema_error(j).find("phase2.weights.a") != std::string::npos);
  j = manifest_to_json(build_manifest(ids, t, 2, 1, Phase2Mode::Descending));
  j["phase2"]["order"] = {"a", "b"};
  CHECK(schema_error(j).find("phase2.order") != std::string::npos);
}

TEST_CASE("property: manifest invariants on random corpora") {
  Rng rng(42);
  for (int round = 0; round < 100; ++round) {
    const auto c = corpus(rng, 1 + uniform_below(rng, 200));
    const auto ids = ids_of(c);
    const auto table = make_score_table(c);
    const auto seed = rng();
    const auto d = build_manifest(ids, table, 2 + uniform_below(rng, 4), seed, Phase2Mode::Descending);

    auto sorted_ids = ids;
    std::sort(sorted_ids.begin(), sorted_ids.end());
    auto p1 = d.phase1;
    std::sort(p1.begin(), p1.end());
    CHECK(p1 == sorted_ids);
    for (std::size_t i = 1; i < d.phase2_order.size(); ++i) {
      const double a = table.at(d.phase2_order[i - 1]), b = table.at(d.phase2_order[i]);
      CHECK(a >= b);
      if (a == b) CHECK(d.phase2_order[i - 1] < d.phase2_order[i]);
    }

    const auto w = build_manifest(ids, table, 2, seed, Phase2Mode::Weighted);
    double total = 0;
    for (const auto& [_, p] : w.phase2_weights) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(std::fabs(total - 1.0) <= 1e-9);
    CHECK(w.phase1 == d.phase1);
  }
}

TEST_CASE("property: weights ignore positive affine maps of the scores") {
  Rng rng(43);
  for (int round = 0; round < 50; ++round) {
    const auto c = corpus(rng, 2 + uniform_below(rng, 50));
    const double scale = 0.1 + 5 * uniform_unit(rng), shift = uniform_unit(rng) - 0.5;
    ScoreTable moved;
    for (const auto& s : c) moved[s.id] = scale * s.score + shift;
    const auto ids = ids_of(c);
    const auto a = phase2_weights(ids, make_score_table(c));
    const auto b = phase2_weights(ids, moved);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-12));
  }
}

TEST_CASE("rewards") {
  const std::vector<score::ScoredId> s{{"b", 0.9}, {"a", 0.1}, {"c", 0.5}};
  const auto r = reward_spec(s, 1.0, 1.0, 0.5);
  REQUIRE(r.rewards.size() == 3);
  CHECK(r.rewards[0] == std::pair<std::string, double>{"a", 1.0});
  CHECK(r.rewards[1] == std::pair<std::string, double>{"b", 2.0});
  CHECK(r.rewards[2].second == doctest::Approx(1.5));
  CHECK(r.format_reward == 0.5);

  for (const auto& [_, v] : reward_spec(s, 2.0, 0.0, 0.0).rewards) CHECK(v == 2.0);
  for (const auto& [_, v] : reward_spec({{{"x", 0.3}, {"y", 0.3}}}, 1.0, 3.0, 0.0).rewards) CHECK(v == 1.0);
  CHECK_THROWS_AS((void)reward_spec(s, 0.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS((void)reward_spec(s, 1.0, -1.0, 0.0), Error);
  CHECK_THROWS_AS((void)reward_spec({}, 1.0, 1.0, 0.0), Error);
}

TEST_CASE("reward spec round-trip and schema") {
  const std::vector<score::ScoredId> s{{"b", 0.9}, {"a", 0.1}, {"c", 0.5}};
  const auto text = reward_spec_to_json(reward_spec(s, 1.0, 2.0, 0.25)).dump(2);
  CHECK(reward_spec_to_json(reward_spec_from_json(nlohmann::json::parse(text))).dump(2) == text);

  auto j = nlohmann::json::parse(text);
  j["rewards"]["a"] = 0.5;
  try {
    (void)reward_spec_from_json(j);
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Schema);
    CHECK(std::string(e.what()).find("rewards.a") != std::string::npos);
  }
  j = nlohmann::json::parse(text);
  j.erase("lambda");
  CHECK_THROWS_AS((void)reward_spec_from_json(j), Error);
}

TEST_CASE("property: rewards follow score order") {
  Rng rng(44);
  for (int round = 0; round < 50; ++round) {
    const auto c = corpus(rng, 2 + uniform_below(rng, 100));
    const auto spec = reward_spec(c, 0.5 + uniform_unit(rng), 3 * uniform_unit(rng), 0.0);
    std::unordered_map<std::string, double> r(spec.rewards.begin(), spec.rewards.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      CHECK(r.at(c[i].id) >= spec.base_reward);
      if (c[i].score >= c[i + 1].score) CHECK(r.at(c[i].id) >= r.at(c[i + 1].id));
    }
  }
}
