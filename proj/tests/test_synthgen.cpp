#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "talentflow/error.hpp"
#include "talentflow/ingestion.hpp"
#include "talentflow/metrics.hpp"
#include "talentflow/synthgen.hpp"
#include "test_util.hpp"

using namespace talentflow;

namespace {

GeneratorSpec small_spec(std::uint64_t seed, std::size_t users) {
  GeneratorSpec s;
  s.seed = seed;
  s.n_users = users;
  s.active_rate = 1.0;
  return s;
}

}  // namespace

TEST(Synthgen, ZeroUsers) {
  auto g = generate(small_spec(1, 0));
  EXPECT_TRUE(g.profiles.empty());
  EXPECT_EQ(g.corpus_jsonl, "");
  EXPECT_EQ(g.truth_json, "{}\n");
}

TEST(Synthgen, DeterministicPerSeed) {
  auto a = generate(small_spec(42, 500));
  auto b = generate(small_spec(42, 500));
  auto c = generate(small_spec(43, 500));
  EXPECT_EQ(a.corpus_jsonl, b.corpus_jsonl);
  EXPECT_EQ(a.truth_json, b.truth_json);
  EXPECT_NE(a.corpus_jsonl, c.corpus_jsonl);
}

TEST(Synthgen, WritesFiles) {
  testutil::TempDir dir("synth");
  generate_to_files(small_spec(5, 50), dir / "c.jsonl", dir / "t.json");
  auto g = generate(small_spec(5, 50));
  EXPECT_EQ(testutil::read_text(dir / "c.jsonl"), g.corpus_jsonl);
  EXPECT_EQ(testutil::read_text(dir / "t.json"), g.truth_json);
  EXPECT_THROW(generate_to_files(small_spec(5, 5), "/nonexistent/dir/c.jsonl", dir / "t.json"), Error);
}

TEST(Synthgen, ValidationNamesTheField) {
  auto expect_field = [](const std::string& text, const std::string& field) {
    try {
      GeneratorSpec::from_json_text(text).validate();
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kValidation);
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  expect_field(R"({"active_rate": 1.5})", "active_rate");
  expect_field(R"({"max_career_years": 0})", "max_career_years");
  expect_field(R"({"promotion_bias": -0.1})", "promotion_bias");
  expect_field(R"({"hop_propensity": [{"lower_years": 0, "upper_years": 5, "p_external": 2}]})", "hop_propensity");
  expect_field(R"({"industries": [{"name": "x", "titles": []}]})", "industries");
  EXPECT_THROW(GeneratorSpec::from_json_text("{not json"), Error);

  auto spec = GeneratorSpec::from_json_text(R"({"seed": 9, "n_users": 12, "curr_date": "2015-01"})");
  EXPECT_EQ(spec.seed, 9u);
  EXPECT_EQ(spec.n_users, 12u);
  EXPECT_EQ(spec.curr_date, (DateMonth{2015, 1}));
}

TEST(Synthgen, CorpusIngestsCleanly) {
  auto g = generate(small_spec(11, 2000));
  std::istringstream in(g.corpus_jsonl);
  auto r = ingest_profiles(in);
  EXPECT_EQ(r.report.rejected_records, 0u);
  EXPECT_EQ(r.report.industry_repairs, 0u);
  EXPECT_EQ(r.report.inverted_jobs, 0u);
  ASSERT_EQ(r.profiles.size(), 2000u);
  EXPECT_EQ(r.profiles[17].jobs, g.profiles[17].jobs);
}

TEST(Synthgen, IndustryIsConsistentPerOrganization) {
  auto g = generate(small_spec(12, 2000));
  std::map<std::string, std::set<std::string>> industries;
  for (const auto& p : g.profiles) {
    for (const auto& j : p.jobs) industries[j.organization].insert(j.industry);
  }
  for (const auto& [org, inds] : industries) EXPECT_EQ(inds.size(), 1u) << org;
}

TEST(Synthgen, MeasuredHopsEqualRecordedTruth) {
  auto spec = small_spec(13, 3000);
  auto g = generate(spec);
  auto truth = nlohmann::json::parse(g.truth_json);
  AnalysisConfig config;
  config.cohort_min_support = 1;
  auto hops = extract_all_hops(g.profiles, config.curr_date).hops;
  CorpusIndex index(g.profiles, config);
  auto stats = external_hop_fraction(hops, {{CohortAxis::kWorkExp, 5}}, index);
  EXPECT_EQ(stats.unattributed_hops, 0u);

  std::size_t generated = 0;
  for (const auto& bin : truth["hop_propensity"]) {
    const int lo = bin["lower_years"], hi = bin["upper_years"];
    const std::size_t ext = bin["generated_external"], in = bin["generated_internal"];
    generated += ext + in;
    auto cell = stats.lookup({{CohortAxis::kWorkExp, lo, hi}});
    EXPECT_EQ(cell.external_hops, ext) << lo;
    EXPECT_EQ(cell.internal_hops, in) << lo;
    if (cell.support() >= 300) {
      EXPECT_NEAR(*cell.fraction, bin["p_external"].get<double>(), 0.08) << lo;
    }
  }
  EXPECT_EQ(generated, hops.size());
}

TEST(Synthgen, StayDurationsPeakInSecondYear) {
  auto g = generate(small_spec(14, 3000));
  auto hops = extract_all_hops(g.profiles, DateMonth{2016, 6}).hops;
  std::map<std::int64_t, std::size_t> by_bin;
  for (const auto& h : hops) ++by_bin[h.stay_months / 12];
  std::int64_t mode = -1;
  std::size_t best = 0;
  for (const auto& [bin, n] : by_bin) {
    if (n > best) {
      best = n;
      mode = bin;
    }
  }
  EXPECT_EQ(mode, 1);  // [12, 24) months
}

TEST(Synthgen, PropensityLookup) {
  GeneratorSpec spec;
  spec.validate();
  EXPECT_DOUBLE_EQ(spec.propensity_at(0), spec.hop_propensity.front().p_external);
  EXPECT_DOUBLE_EQ(spec.propensity_at(12 * 100), spec.hop_propensity.back().p_external);
  for (std::size_t i = 1; i < spec.hop_propensity.size(); ++i) {
    EXPECT_LT(spec.hop_propensity[i].p_external, spec.hop_propensity[i - 1].p_external);
  }
}
