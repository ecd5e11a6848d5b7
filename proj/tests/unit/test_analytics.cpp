#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dri/analytics/bins.hpp"
#include "dri/analytics/histogram.hpp"
#include "dri/analytics/subset.hpp"
#include "dri/common/random.hpp"

using namespace dri;
using namespace dri::analytics;

namespace {

std::vector<ScoredId> table(std::initializer_list<double> scores) {
  std::vector<ScoredId> out;
  for (double s : scores) out.push_back({"id" + std::to_string(out.size()), s});
  return out;
}

std::vector<ScoredId> random_scores(Rng& rng, std::size_t n) {
  std::vector<ScoredId> out;
  for (std::size_t i = 0; i < n; ++i) {
    // Some draws sit exactly on an edge.
    double s = uniform_unit(rng);
    if (uniform_below(rng, 10) == 0) s = static_cast<double>(uniform_below(rng, 21)) / 20.0;
    out.push_back({"s" + std::to_string(i), s});
  }
  return out;
}

// `per_bin` scores in every Balanced16 bin plus `extra` in bin 0.
std::vector<ScoredId> balanced_corpus(Rng& rng, std::size_t per_bin, std::size_t short_bin = 99) {
  const auto edges = BinScheme::balanced16().edges();
  std::vector<ScoredId> out;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const std::size_t n = b == short_bin ? per_bin - 1 : per_bin;
    for (std::size_t k = 0; k < n; ++k) {
      const double s = edges[b] + (edges[b + 1] - edges[b]) * (0.01 + 0.98 * uniform_unit(rng));
      out.push_back({"b" + std::to_string(b) + "_" + std::to_string(k), s});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bin schemes") {
  const auto b = BinScheme::balanced16();
  CHECK(b.bins() == 16);
  CHECK(b.edges()[1] == 0.2);
  CHECK(b.edges()[2] == 0.25);
  CHECK(b.edges()[15] == 0.9);
  CHECK(BinScheme::parse("uniform").bins() == 20);
  CHECK(BinScheme::parse("uniform:7").bins() == 7);
  CHECK(BinScheme::parse("uniform10").name() == "uniform10");
  CHECK_THROWS_AS((void)BinScheme::parse("uniform:0"), Error);
  CHECK_THROWS_AS((void)BinScheme::parse("log"), Error);
}

TEST_CASE("boundary rule") {
  const auto b = BinScheme::balanced16();
  CHECK(b.bin_of(0.0) == 0);
  CHECK(b.bin_of(0.2) == 0);
  CHECK(b.bin_of(std::nextafter(0.2, 1.0)) == 1);
  CHECK(b.bin_of(0.9) == 14);
  CHECK(b.bin_of(1.0) == 15);
  const auto u = BinScheme::uniform(20);
  CHECK(u.bin_of(0.05) == 0);
  CHECK(u.bin_of(0.5) == 9);
  CHECK_THROWS_AS((void)u.bin_of(-0.01), Error);
  CHECK_THROWS_AS((void)u.bin_of(1.5), Error);
  CHECK_THROWS_AS((void)u.bin_of(std::nan("")), Error);
}

TEST_CASE("one score per uniform bin") {
  std::vector<ScoredId> s;
  for (int i = 0; i < 20; ++i) s.push_back({"x" + std::to_string(i), 0.025 + 0.05 * i});
  const auto h = histogram(s, BinScheme::uniform(20));
  CHECK(std::all_of(h.counts.begin(), h.counts.end(), [](auto c) { return c == 1; }));
  CHECK(histogram({}, BinScheme::uniform(20)).total() == 0);
}

TEST_CASE("out-of-range scores name the id") {
  const auto s = table({0.5, 1.2});
  try {
    (void)histogram(s, BinScheme::uniform(20));
    FAIL("expected OutOfRangeScore");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRangeScore);
    CHECK(std::string(e.what()).find("id1") != std::string::npos);
  }
}

TEST_CASE("error rates") {
  std::vector<ScoredId> s;
  std::vector<Prediction> p;
  for (int i = 0; i < 10; ++i) {
    s.push_back({"a" + std::to_string(i), 0.42});
    p.push_back({"a" + std::to_string(i), i >= 3});
  }
  const auto h = join_error_rates(histogram(s, BinScheme::uniform(20)), p, s);
  REQUIRE(h.error_rate);
  CHECK((*h.error_rate)[8] == doctest::Approx(0.3));
  CHECK_FALSE((*h.error_rate)[0].has_value());
  const auto j = histogram_to_json(h, summarize(s, h));
  CHECK(j["error_rate"][0].is_null());
  CHECK(j["error_rate"][8] == 0.3);
  const auto csv = histogram_to_csv(h);
  CHECK(csv.find("0,0,0.05,0,\n") != std::string::npos);
  CHECK(csv.find("8,0.4,0.45,10,0.3\n") != std::string::npos);

  std::vector<Prediction> stray{{"nope", true}};
  CHECK_THROWS_AS((void)join_error_rates(h, stray, s), Error);
}

TEST_CASE("summary reports plain and binned moments") {
  const auto s = table({0.1, 0.3});
  const auto h = histogram(s, BinScheme::uniform(10));
  const auto m = summarize(s, h);
  CHECK(m.mean == doctest::Approx(0.2));
  CHECK(m.stddev == doctest::Approx(0.1));
  CHECK(m.binned_mean == doctest::Approx(0.15));  // midpoints 0.05 and 0.25
  CHECK(m.binned_stddev == doctest::Approx(0.1));
}

TEST_CASE("range filter examples") {
  CHECK(range_filter(table({0.1, 0.5, 0.9}), 0.2, 0.8) == std::vector<std::string>{"id1"});
  CHECK(range_filter(table({0.2, 1.0}), 0.2, 1.0) == std::vector<std::string>{"id0", "id1"});
  CHECK(range_filter(table({0.0, 0.3, 1.0}), 0.0, 1.0).size() == 3);
  CHECK(range_filter(table({0.5}), 0.0, 0.5).empty());
  CHECK_THROWS_AS((void)range_filter(table({}), 0.5, 0.5), Error);
  CHECK_THROWS_AS((void)range_filter(table({}), -0.1, 0.5), Error);
  CHECK_THROWS_AS((void)range_filter(table({}), 0.1, 1.5), Error);
}

TEST_CASE("balanced subset draws per_bin from every bin") {
  Rng rng(31);
  const auto corpus = balanced_corpus(rng, 90);
  const auto a = balanced_subset(corpus, 80, 7, ShortBinPolicy::Strict);
  REQUIRE(a.picks.size() == 1280);
  std::vector<std::size_t> per(16, 0);
  std::set<std::string> ids;
  for (const auto& p : a.picks) {
    ++per[p.bin];
    ids.insert(p.id);
  }
  CHECK(std::all_of(per.begin(), per.end(), [](auto c) { return c == 80; }));
  CHECK(ids.size() == 1280);
  CHECK(std::is_sorted(a.picks.begin(), a.picks.end(), [](const auto& x, const auto& y) { return x.bin < y.bin; }));

  const auto again = balanced_subset(corpus, 80, 7, ShortBinPolicy::Strict);
  CHECK(picks_to_jsonl(again.picks) == picks_to_jsonl(a.picks));
  const auto other = balanced_subset(corpus, 80, 8, ShortBinPolicy::Strict);
  CHECK(picks_to_jsonl(other.picks) != picks_to_jsonl(a.picks));
}

TEST_CASE("short bins") {
  Rng rng(32);
  const auto corpus = balanced_corpus(rng, 80, 5);
  try {
    (void)balanced_subset(corpus, 80, 1, ShortBinPolicy::Strict);
    FAIL("expected InsufficientBin");
  } catch (const InsufficientBin& e) {
    CHECK(e.bin() == 5);
    CHECK(e.have() == 79);
    CHECK(e.need() == 80);
  }
  const auto t = balanced_subset(corpus, 80, 1, ShortBinPolicy::TakeAll);
  CHECK(t.picks.size() == 1279);
  CHECK(t.warnings.size() == 1);
}

TEST_CASE("property: every score lands in exactly one bin") {
  Rng rng(33);
  for (int round = 0; round < 50; ++round) {
    const auto s = random_scores(rng, 1 + uniform_below(rng, 400));
    for (const auto& scheme : {BinScheme::uniform(20), BinScheme::balanced16(), BinScheme::uniform(3)}) {
      const auto h = histogram(s, scheme);
      CHECK(h.total() == s.size());
      for (const auto& x : s) {
        const auto& e = scheme.edges();
        std::size_t hits = 0;
        for (std::size_t b = 0; b + 1 < e.size(); ++b)
          if ((x.score > e[b] && x.score <= e[b + 1]) || (b == 0 && x.score == 0.0)) ++hits;
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("property: filtered ids leave no histogram mass outside [lo, hi)") {
  Rng rng(34);
  const auto s = random_scores(rng, 2000);
  const auto scheme = BinScheme::uniform(20);
  for (int i = 0; i < 100; ++i) {
    double lo = static_cast<double>(uniform_below(rng, 20)) / 20.0;
    double hi = static_cast<double>(uniform_below(rng, 20) + 1) / 20.0;
    if (i % 2) {
      lo = uniform_unit(rng);
      hi = uniform_unit(rng);
    }
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) continue;
    const auto ids = range_filter(s, lo, hi);
    std::vector<ScoredId> kept;
    for (const auto& x : s)
      if (std::find(ids.begin(), ids.end(), x.id) != ids.end()) kept.push_back(x);
    const auto h = histogram(kept, scheme);
    const auto& e = h.edges;
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      // A bin (e_b, e_b+1] lies outside [lo, hi) when it ends before lo or starts at or after hi.
      if (e[b + 1] < lo || (e[b] >= hi && !(hi == 1.0))) CHECK(h.counts[b] == 0);
    }
    for (const auto& x : kept) CHECK(((x.score >= lo && x.score < hi) || (hi == 1.0 && x.score == 1.0)));
  }
}

TEST_CASE("property: the seed changes which ids, never how many per bin") {
  Rng rng(35);
  const auto corpus = balanced_corpus(rng, 100);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = balanced_subset(corpus, 50, seed, ShortBinPolicy::Strict);
    std::vector<std::size_t> per(16, 0);
    for (const auto& p : a.picks) ++per[p.bin];
    CHECK(std::all_of(per.begin(), per.end(), [](auto c) { return c == 50; }));
  }
}
