#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.hpp"
#include "vintagecheck/battery.hpp"

namespace vintagecheck {
namespace {

const Thresholds kDefaults;

PairedVariable paired(std::vector<double> o, std::vector<double> n) {
  return {"v1", "City", std::move(o), std::move(n)};
}

MetricRecord rec(std::string var, std::string level, MetricKind kind,
                 double value, const Thresholds& t = kDefaults) {
  MetricRecord r;
  r.variable = std::move(var);
  r.level = std::move(level);
  r.kind = kind;
  r.value = value;
  r.verdict = judge(kind, r.value, t);
  return r;
}

const std::string& text_at(const SheetRow& row, std::size_t i) {
  return std::get<std::string>(row.cells[i]);
}

TEST(CharacteristicsTest, IdenticalMetadataPasses) {
  std::mt19937_64 rng(1);
  const Vintage v = testing::random_vintage(rng, {});
  const TestSheet s = characteristics_test(v, v);
  EXPECT_EQ(s.summary.fail, 0u);
  for (const auto& row : s.rows) EXPECT_EQ(row.verdict, Verdict::kPass);
}

TEST(CharacteristicsTest, VariableCountMismatchWithEqualObservations) {
  // 757 vs 762 variables, equal observation counts.
  std::vector<std::string> old_vars, new_vars;
  for (int i = 0; i < 757; ++i) old_vars.push_back("v" + std::to_string(i));
  for (int i = 0; i < 762; ++i) new_vars.push_back("v" + std::to_string(i));
  VintageBuilder a(old_vars), b(new_vars);
  std::vector<std::optional<double>> ra(757, 1.0), rb(762, 1.0);
  for (int k = 0; k < 3; ++k) {
    a.add_row(std::to_string(k), "L", ra);
    b.add_row(std::to_string(k), "L", rb);
  }
  const TestSheet s =
      characteristics_test(std::move(a).build(), std::move(b).build());
  EXPECT_EQ(text_at(s.rows[0], 0), "variable_count");
  EXPECT_EQ(s.rows[0].verdict, Verdict::kFail);
  EXPECT_EQ(text_at(s.rows[0], 1), "757");
  EXPECT_EQ(text_at(s.rows[0], 2), "762");
  EXPECT_EQ(text_at(s.rows[1], 0), "observation_count");
  EXPECT_EQ(s.rows[1].verdict, Verdict::kPass);
  // v757..v761 are new-only.
  EXPECT_EQ(s.summary.fail, 1u + 5u);
}

TEST(CharacteristicsTest, VariableMissingFromNew) {
  VintageBuilder a({"v1", "v9"}), b({"v1"});
  a.add_row("1", "L", {1.0, 2.0});
  b.add_row("1", "L", {1.0});
  const TestSheet s =
      characteristics_test(std::move(a).build(), std::move(b).build());
  bool found = false;
  for (const auto& row : s.rows) {
    if (text_at(row, 3) == "v9 missing from new vintage") {
      found = true;
      EXPECT_EQ(row.verdict, Verdict::kFail);
    }
  }
  EXPECT_TRUE(found);
}

TEST(NaTest, CountsPerVariableAndLevel) {
  VintageBuilder b({"v1", "v2"});
  b.add_row("1", "City", {std::nullopt, 1.0})
      .add_row("2", "City", {1.0, 1.0})
      .add_row("1", "Nat", {1.0, std::nullopt})
      .add_row("2", "Nat", {1.0, std::nullopt});
  const TestSheet s = na_test(std::move(b).build());
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(text_at(s.rows[0], 0), "v1");
  EXPECT_EQ(text_at(s.rows[0], 1), "City");
  EXPECT_EQ(std::get<std::int64_t>(s.rows[0].cells[2]), 1);
  EXPECT_EQ(s.rows[0].verdict, Verdict::kFail);
  // All-missing column at one level: count equals that level's rows.
  EXPECT_EQ(std::get<std::int64_t>(s.rows[1].cells[2]), 2);
}

TEST(NaTest, NoMissingMeansEmptySheet) {
  std::mt19937_64 rng(2);
  EXPECT_TRUE(na_test(testing::random_vintage(rng, {})).rows.empty());
}

TEST(DiscardTest, VerdictsAndCounts) {
  EXPECT_EQ(discard_test({5, 5, 5, 0, 0}).rows[0].verdict, Verdict::kPass);
  const TestSheet s = discard_test({10, 7, 7, 3, 0});
  EXPECT_EQ(s.rows[0].verdict, Verdict::kFail);
  EXPECT_EQ(std::get<std::int64_t>(s.rows[0].cells[3]), 3);
  EXPECT_EQ(discard_test({3, 3, 2, 1, 1}).rows[0].verdict, Verdict::kFail);
}

TEST(MagnitudeTest, IdentityGivesFivePasses) {
  const auto recs = magnitude_test(paired({1, 5, 9}, {1, 5, 9}), kDefaults);
  ASSERT_EQ(recs.size(), 5u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(r.verdict, Verdict::kPass);
  }
}

TEST(MagnitudeTest, MeanRatioOutOfBand) {
  // mean_old = 100, mean_new = 5000 -> R = 0.02.
  const auto recs = magnitude_test(paired({100}, {5000}), kDefaults);
  const auto& mean = recs[3];
  EXPECT_EQ(mean.kind, MetricKind::kMagnitudeMean);
  EXPECT_NEAR(*mean.value, 0.02, 1e-15);
  EXPECT_EQ(mean.verdict, Verdict::kFail);
}

TEST(MagnitudeTest, OneSidedZeroWarns) {
  const auto recs = magnitude_test(paired({0, 4}, {3, 4}), kDefaults);
  EXPECT_EQ(recs[0].kind, MetricKind::kMagnitudeMin);
  EXPECT_FALSE(recs[0].value);
  EXPECT_EQ(recs[0].verdict, Verdict::kUndefinedWarn);
}

TEST(MagnitudeTest, SignFlipFails) {
  const auto flip = magnitude_test(paired({3, 5}, {-3, -5}), kDefaults);
  for (const auto& r : flip) EXPECT_EQ(r.verdict, Verdict::kFail);
}

TEST(MagnitudeTest, EmptyPairIsNoData) {
  const auto recs = magnitude_test(paired({}, {}), kDefaults);
  ASSERT_EQ(recs.size(), 5u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.verdict, Verdict::kUndefinedWarn);
    EXPECT_EQ(r.sample_size, 0u);
  }
}

TEST(MreTest, Examples) {
  const auto r = mre_test(paired({1, 2, 0, 4}, {1.1, 1.8, 5, 4}), kDefaults);
  EXPECT_NEAR(*r.value, 0.2 / 3, 1e-15);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(judge(MetricKind::kMre, 0.2, kDefaults), Verdict::kFail);
  EXPECT_EQ(mre_test(paired({3, 4}, {3, 4}), kDefaults).value, 0.0);
  EXPECT_EQ(mre_test(paired({0, 0}, {1, 1}), kDefaults).verdict,
            Verdict::kUndefinedWarn);
}

TEST(MreTest, DropsPositionsMissingOnEitherSide) {
  const auto r = mre_test(paired({1, kMissing, 2}, {1, 5, kMissing}), kDefaults);
  EXPECT_EQ(r.dropped_positions, 2u);
  EXPECT_EQ(r.sample_size, 1u);
  EXPECT_EQ(r.value, 0.0);
}

TEST(CorrelationTest, PairVerdict) {
  EXPECT_EQ(judge(MetricKind::kPearson, 0.9, kDefaults), Verdict::kPass);
  EXPECT_EQ(judge(MetricKind::kSpearman, 0.95, kDefaults), Verdict::kPass);
  EXPECT_EQ(judge(MetricKind::kPearson, 0.401, kDefaults), Verdict::kFail);
  EXPECT_EQ(judge(MetricKind::kSpearman, -0.278, kDefaults), Verdict::kFail);
  EXPECT_EQ(judge(MetricKind::kPearson, 0.8, kDefaults), Verdict::kPass);

  const auto good = correlation_test(paired({1, 2, 3, 4}, {2, 4, 6, 8.5}), kDefaults);
  EXPECT_EQ(good.pair_verdict, Verdict::kPass);

  const auto mixed = correlation_test(
      paired({1, 2, 3, 4, 5, 100}, {2, 1, 4, 3, 5, 100}), kDefaults);
  EXPECT_EQ(mixed.pearson.verdict, Verdict::kPass);
  EXPECT_EQ(mixed.spearman.verdict, Verdict::kPass);

  const auto constant = correlation_test(paired({1, 1, 1}, {1, 2, 3}), kDefaults);
  EXPECT_EQ(constant.pearson.verdict, Verdict::kUndefinedWarn);
  EXPECT_EQ(constant.pair_verdict, Verdict::kFail);
}

TEST(CorrelationTest, FailsOnRhoOnly) {
  // r = 0.85, rho = 0.7 as plain criteria application.
  CorrelationOutcome o;
  o.pearson = rec("v", "L", MetricKind::kPearson, 0.85);
  o.spearman = rec("v", "L", MetricKind::kSpearman, 0.7);
  EXPECT_EQ(o.pearson.verdict, Verdict::kPass);
  EXPECT_EQ(o.spearman.verdict, Verdict::kFail);
}

TEST(DistributionTest, Boundaries) {
  EXPECT_EQ(judge(MetricKind::kKsPValue, 0.001, kDefaults), Verdict::kFail);
  EXPECT_EQ(judge(MetricKind::kKsPValue, 0.05, kDefaults), Verdict::kPass);
  const auto r = distribution_test(paired({1, 2, 3}, {1, 2, 3}), kDefaults);
  EXPECT_EQ(r.ks_statistic, 0.0);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.verdict, Verdict::kPass);
}

TEST(SpearmanDiffTest, Examples) {
  const HierarchySpec h({{"P", "C"}}, {{1, "P"}, {2, "C"}});
  auto one = spearman_diff_test("v", {{"P", 1.0}, {"C", 1.0}}, h, kDefaults);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].value, 0.0);
  EXPECT_EQ(one[0].verdict, Verdict::kPass);

  auto drop = spearman_diff_test("v", {{"P", 0.9}, {"C", 0.7}}, h, kDefaults);
  EXPECT_NEAR(*drop[0].value, (0.9 - 0.7) / 0.9, 1e-15);
  EXPECT_EQ(drop[0].verdict, Verdict::kFail);

  auto zero = spearman_diff_test("v", {{"P", 0.0}, {"C", 0.5}}, h, kDefaults);
  EXPECT_EQ(zero[0].verdict, Verdict::kUndefinedWarn);
  auto absent = spearman_diff_test("v", {{"P", 0.5}}, h, kDefaults);
  EXPECT_EQ(absent[0].verdict, Verdict::kUndefinedWarn);
}

TEST(SpearmanDiffTest, OneRecordPerEdgeRegardlessOfData) {
  const HierarchySpec h({{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}},
                        {{1, "A"}, {2, "B"}, {3, "D"}, {4, "C"}});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 500; ++i) {
    std::map<std::string, MetricValue> rho;
    for (const char* l : {"A", "B", "C", "D"}) {
      if (u(rng) > -0.8) rho[l] = u(rng);
    }
    EXPECT_EQ(spearman_diff_test("v", rho, h, kDefaults).size(), 4u);
  }
}

std::vector<MetricRecord> four(const std::string& var, const std::string& level,
                               double e, double r, double rho, double s) {
  return {rec(var, level, MetricKind::kMre, e),
          rec(var, level, MetricKind::kPearson, r),
          rec(var, level, MetricKind::kSpearman, rho),
          rec(var, level, MetricKind::kKsPValue, s)};
}

TEST(HybridTest, FlagsOnlyFourWayFailures) {
  std::vector<MetricRecord> all;
  for (auto&& part : {four("v5", "National", 0.578, 0.401, -0.278, 0.001),
                      four("v8", "City", 0.669, 0.532, 0.454, 0.046),
                      four("v5", "Town", 0.578, 0.401, -0.278, 0.5)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  const TestSheet s = hybrid_test(all, kDefaults);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(text_at(s.rows[0], 0), "v5");
  EXPECT_EQ(text_at(s.rows[0], 1), "National");
  EXPECT_EQ(std::get<MetricValue>(s.rows[0].cells[2]), 0.578);
  EXPECT_EQ(text_at(s.rows[1], 0), "v8");
}

TEST(HybridTest, UndefinedNeverSatisfiesCriterion) {
  auto recs = four("v", "L", 0.9, 0.1, 0.1, 0.001);
  recs[1].value = std::nullopt;
  EXPECT_TRUE(hybrid_test(recs, kDefaults).rows.empty());
}

std::vector<MetricRecord> failures(const std::string& var, int e, int r,
                                   int rho, int s) {
  std::vector<MetricRecord> out;
  const auto add = [&](MetricKind k, int n, double bad) {
    for (int i = 0; i < n; ++i) {
      out.push_back(rec(var, "L" + std::to_string(i), k, bad));
    }
  };
  add(MetricKind::kMre, e, 0.9);
  add(MetricKind::kPearson, r, 0.1);
  add(MetricKind::kSpearman, rho, 0.1);
  add(MetricKind::kKsPValue, s, 0.001);
  return out;
}

TEST(RankingTest, OrdersByTotalThenName) {
  auto all = failures("v3", 4, 5, 2, 5);
  for (auto& r : failures("v7", 4, 6, 6, 6)) all.push_back(r);
  for (auto& r : failures("a_tie", 1, 0, 0, 0)) all.push_back(r);
  for (auto& r : failures("b_tie", 0, 1, 0, 0)) all.push_back(r);
  all.push_back(rec("clean", "L0", MetricKind::kMre, 0.01));
  const TestSheet s = ranking_test(all);
  ASSERT_EQ(s.rows.size(), 4u);
  EXPECT_EQ(text_at(s.rows[0], 0), "v7");
  EXPECT_EQ(std::get<std::int64_t>(s.rows[0].cells[7]), 22);
  EXPECT_EQ(text_at(s.rows[1], 0), "v3");
  EXPECT_EQ(std::get<std::int64_t>(s.rows[1].cells[7]), 16);
  EXPECT_EQ(text_at(s.rows[2], 0), "a_tie");
  EXPECT_EQ(text_at(s.rows[3], 0), "b_tie");
}

TEST(RankingTest, MagnitudeCountsOncePerLevelAndWarningsIgnored) {
  std::vector<MetricRecord> all = {
      rec("v", "L", MetricKind::kMagnitudeMin, 50),
      rec("v", "L", MetricKind::kMagnitudeMax, 50),
      rec("v", "M", MetricKind::kMagnitudeSum, 0.01),
  };
  MetricRecord undefined;
  undefined.variable = "v";
  undefined.level = "L";
  undefined.kind = MetricKind::kPearson;
  undefined.verdict = Verdict::kUndefinedWarn;
  all.push_back(undefined);
  const TestSheet s = ranking_test(all);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_EQ(std::get<std::int64_t>(s.rows[0].cells[5]), 2);
  EXPECT_EQ(std::get<std::int64_t>(s.rows[0].cells[2]), 0);
  EXPECT_EQ(std::get<std::int64_t>(s.rows[0].cells[7]), 2);
}

HierarchySpec chain() {
  return HierarchySpec({{"A", "B"}, {"B", "C"}}, {{1, "A"}, {2, "B"}, {3, "C"}});
}

TEST(RunBattery, IdentityRunAllPass) {
  std::mt19937_64 rng(4);
  const Vintage v = testing::random_vintage(rng, {});
  const HierarchySpec h = chain();
  const TestReport r = run_battery(v, v, &h, kDefaults, Toggles{});
  EXPECT_EQ(r.overall_verdict, Verdict::kPass);
  EXPECT_EQ(r.sheets.size(), kAllSheets.size());
  for (const auto& s : r.sheets) EXPECT_EQ(s.summary.fail, 0u) << sheet_name(s.id);
}

TEST(RunBattery, FlatModeHasNoSpearmanDiffSheet) {
  std::mt19937_64 rng(5);
  testing::VintageShape shape;
  shape.levels = {std::string(kFlatLevel)};
  const Vintage v = testing::random_vintage(rng, shape);
  const TestReport r = run_battery(v, v, nullptr, kDefaults, Toggles{});
  EXPECT_EQ(r.find(SheetId::kSpearmanDiff), nullptr);
  EXPECT_NE(r.find(SheetId::kHybrid), nullptr);
  EXPECT_EQ(r.metadata.hierarchy_mode, "flat");
}

TEST(RunBattery, HybridOnlyStillComputesItsInputs) {
  // Second vintage scrambles v0 at level A so the hybrid test fires.
  std::mt19937_64 rng(6);
  testing::VintageShape shape;
  shape.n_keys = 60;
  shape.zero_rate = 0;
  const Vintage a = testing::random_vintage(rng, shape);
  std::vector<std::vector<double>> cols;
  for (std::size_t c = 0; c < a.n_variables(); ++c) {
    cols.emplace_back(a.column(c).begin(), a.column(c).end());
  }
  for (std::size_t r = 0; r < a.n_observations(); ++r) {
    if (a.levels()[r] == "A") cols[0][r] = 1000.0 - 7.0 * cols[0][r];
  }
  const Vintage b(a.variables(), a.keys(), a.levels(), cols);

  Toggles only_hybrid = Toggles::none();
  only_hybrid.hybrid = true;
  const HierarchySpec h = chain();
  const TestReport r = run_battery(a, b, &h, kDefaults, only_hybrid);
  ASSERT_EQ(r.sheets.size(), 1u);
  EXPECT_EQ(r.sheets[0].id, SheetId::kHybrid);
  ASSERT_EQ(r.sheets[0].rows.size(), 1u);
  EXPECT_EQ(text_at(r.sheets[0].rows[0], 0), "v0");
  EXPECT_EQ(text_at(r.sheets[0].rows[0], 1), "A");
}

TEST(RunBattery, UnusedRankedLevelWarns) {
  std::mt19937_64 rng(7);
  const Vintage v = testing::random_vintage(rng, {});
  const HierarchySpec h({{"A", "B"}}, {{1, "A"}, {2, "B"}, {3, "C"}, {4, "E"}});
  const TestReport r = run_battery(v, v, &h, kDefaults, Toggles{});
  int hits = 0;
  for (const auto& w : r.warnings) {
    if (w.source == "hierarchy") {
      EXPECT_EQ(w.level, "E");
      ++hits;
    }
  }
  EXPECT_EQ(hits, 1);
}

// --- invariant suites ------------------------------------------------------

Vintage perturb(const Vintage& v, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> noise(0, scale);
  std::vector<std::vector<double>> cols;
  for (std::size_t c = 0; c < v.n_variables(); ++c) {
    cols.emplace_back(v.column(c).begin(), v.column(c).end());
    for (auto& x : cols.back()) {
      if (!is_missing(x)) x = x * (1 + noise(rng));
    }
  }
  return Vintage(v.variables(), v.keys(), v.levels(), cols);
}

TEST(BatteryProperty, VerdictMonotonicity) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::uniform_real_distribution<double> c(0.01, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    Thresholds lo, hi;
    lo.mre_max = c(rng);
    hi.mre_max = lo.mre_max + c(rng);
    if (judge(MetricKind::kMre, v, lo) == Verdict::kPass) {
      EXPECT_EQ(judge(MetricKind::kMre, v, hi), Verdict::kPass);
    }
    const double r = u(rng) - 1.0;
    lo.correlation_min = c(rng);
    hi.correlation_min = std::min(1.0, lo.correlation_min + c(rng));
    if (judge(MetricKind::kPearson, r, lo) == Verdict::kFail) {
      EXPECT_EQ(judge(MetricKind::kPearson, r, hi), Verdict::kFail);
    }
  }
}

TEST(BatteryProperty, HybridSubsetAndRankingConservation) {
  std::mt19937_64 rng(9);
  const HierarchySpec h = chain();
  for (int i = 0; i < 500; ++i) {
    testing::VintageShape shape;
    shape.n_keys = 4 + i % 9;
    shape.n_vars = 1 + i % 4;
    shape.missing_rate = 0.05;
    shape.zero_rate = 0.1;
    const Vintage a = testing::random_vintage(rng, shape);
    const Vintage b = perturb(a, rng, 0.05 + 0.5 * (i % 5));
    const auto plan = plan_join(a, b);
    const MetricSet m = compute_metrics(a, b, plan, &h, kDefaults, 1);
    const auto all = m.all();

    const TestSheet hybrid = hybrid_test(all, kDefaults);
    for (const auto& row : hybrid.rows) {
      const auto& var = text_at(row, 0);
      const auto& level = text_at(row, 1);
      for (const auto* part : {&m.mre, &m.pearson, &m.spearman, &m.distribution}) {
        for (const auto& r : *part) {
          if (r.variable == var && r.level == level) {
            EXPECT_EQ(r.verdict, Verdict::kFail);
          }
        }
      }
    }

    const TestSheet ranking = ranking_test(all);
    for (const auto& row : ranking.rows) {
      const auto& var = text_at(row, 0);
      const auto fails = [&](const std::vector<MetricRecord>& part) {
        std::int64_t n = 0;
        for (const auto& r : part) n += r.variable == var && r.verdict == Verdict::kFail;
        return n;
      };
      std::set<std::string> mag_levels;
      for (const auto& r : m.magnitude) {
        if (r.variable == var && r.verdict == Verdict::kFail) mag_levels.insert(r.level);
      }
      const std::int64_t e = fails(m.mre), p = fails(m.pearson),
                         s = fails(m.spearman), k = fails(m.distribution),
                         d = fails(m.spearman_diff);
      const auto mag = static_cast<std::int64_t>(mag_levels.size());
      EXPECT_EQ(std::get<std::int64_t>(row.cells[1]), e);
      EXPECT_EQ(std::get<std::int64_t>(row.cells[2]), p);
      EXPECT_EQ(std::get<std::int64_t>(row.cells[3]), s);
      EXPECT_EQ(std::get<std::int64_t>(row.cells[4]), k);
      EXPECT_EQ(std::get<std::int64_t>(row.cells[5]), mag);
      EXPECT_EQ(std::get<std::int64_t>(row.cells[6]), d);
      EXPECT_EQ(std::get<std::int64_t>(row.cells[7]), e + p + s + k + mag + d);
    }
    EXPECT_EQ(m.spearman_diff.size(), h.pairs().size() * a.n_variables());
  }
}

TEST(BatteryProperty, LevelLocalityUnderColumnPermutation) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 500; ++i) {
    testing::VintageShape shape;
    shape.n_keys = 5 + i % 6;
    shape.n_vars = 3;
    shape.missing_rate = 0.05;
    const Vintage a = testing::random_vintage(rng, shape);
    const Vintage b = perturb(a, rng, 0.3);

    // Shuffle v1's new-vintage column across rows; v0 and v2 must not move.
    std::vector<std::vector<double>> cols;
    for (std::size_t c = 0; c < b.n_variables(); ++c) {
      cols.emplace_back(b.column(c).begin(), b.column(c).end());
    }
    std::shuffle(cols[1].begin(), cols[1].end(), rng);
    const Vintage b2(b.variables(), b.keys(), b.levels(), cols);

    const auto m1 = compute_metrics(a, b, plan_join(a, b), nullptr, kDefaults, 1).all();
    const auto m2 = compute_metrics(a, b2, plan_join(a, b2), nullptr, kDefaults, 1).all();
    ASSERT_EQ(m1.size(), m2.size());
    for (std::size_t k = 0; k < m1.size(); ++k) {
      if (m1[k].variable != "v1") EXPECT_EQ(m1[k], m2[k]);
    }
  }
}

TEST(BatteryProperty, ParallelMatchesSerial) {
  std::mt19937_64 rng(12);
  testing::VintageShape shape;
  shape.n_keys = 50;
  shape.n_vars = 12;
  shape.missing_rate = 0.03;
  const Vintage a = testing::random_vintage(rng, shape);
  const Vintage b = perturb(a, rng, 0.4);
  const HierarchySpec h = chain();
  RunOptions serial{1, true, {}};
  RunOptions parallel{8, true, {}};
  EXPECT_EQ(to_json(run_battery(a, b, &h, kDefaults, Toggles{}, serial)),
            to_json(run_battery(a, b, &h, kDefaults, Toggles{}, parallel)));
}

}  // namespace
}  // namespace vintagecheck
