#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "polyfreq/error.hpp"
#include "polyfreq/estimators.hpp"
#include "polyfreq/rate.hpp"
#include "polyfreq/serialize.hpp"

using namespace polyfreq;

namespace {

const TimeSeriesModel kAr1 = ArmaModel{0.0, {0.5}, {}, NoiseSpec::gaussian(1.0)};

}  // namespace

TEST(Rate, GeometricSizes) {
  EXPECT_EQ(geometric_sample_sizes(1024, 131072),
            (std::vector<std::uint64_t>{1024, 2048, 4096, 8192, 16384, 32768, 65536, 131072}));
  EXPECT_EQ(geometric_sample_sizes(100, 500), (std::vector<std::uint64_t>{100, 200, 400}));
  EXPECT_THROW(geometric_sample_sizes(64, 64), DomainError);
  EXPECT_THROW(geometric_sample_sizes(0, 64), DomainError);
}

TEST(Rate, LogLogSlope) {
  const std::vector<double> x{1.0, 10.0, 100.0, 1000.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.0 / 3.0));
  EXPECT_NEAR(loglog_slope(x, y), -1.0 / 3.0, 1e-14);
  EXPECT_THROW(loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
  EXPECT_THROW(loglog_slope(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST(Rate, TruthAgainstItselfIsDegenerate) {
  const std::vector<std::uint64_t> ns{256, 512, 1024};
  RateOptions options;
  options.estimator = RateEstimator::truth;
  const auto r = rate_experiment(kAr1, ns, 3, 1, options);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isnan(r.fitted_slope));
  EXPECT_FALSE(r.slope_ci);
  for (const auto& rec : r.records) EXPECT_EQ(rec.sup_error, 0.0);
}

TEST(Rate, Errors) {
  const std::vector<std::uint64_t> ns{256, 512};
  EXPECT_THROW(rate_experiment(kAr1, ns, 0, 1), DomainError);
  EXPECT_THROW(rate_experiment(kAr1, std::vector<std::uint64_t>{256, 256}, 2, 1), DomainError);
  EXPECT_THROW(rate_experiment(kAr1, std::vector<std::uint64_t>{8, 256}, 2, 1), DomainError);
  EXPECT_THROW(rate_experiment(ArmaModel{0.0, {0.5}, {}, NoiseSpec::laplace(1.0)}, ns, 2, 1), ModelError);
  EXPECT_THROW(rate_experiment(ArmaModel{0.0, {1.5}, {}, {}}, ns, 2, 1), ModelError);
}

TEST(Rate, DeterministicAcrossThreadCounts) {
  const std::vector<std::uint64_t> ns{512, 1024, 2048};
  RateOptions one;
  one.threads = 1;
  RateOptions four = one;
  four.threads = 4;
  const auto a = rate_experiment(kAr1, ns, 4, 9, one);
  const auto b = rate_experiment(kAr1, ns, 4, 9, four);
  ASSERT_EQ(a.records.size(), 12u);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].n, b.records[i].n);
    EXPECT_EQ(a.records[i].replication, b.records[i].replication);
    EXPECT_EQ(a.records[i].sup_error, b.records[i].sup_error);
    EXPECT_EQ(a.modulus[i].delta_n_b, b.modulus[i].delta_n_b);
  }
  EXPECT_EQ(a.fitted_slope, b.fitted_slope);
  EXPECT_EQ(a.slope_ci, b.slope_ci);
}

TEST(Rate, RecordsAndDecomposition) {
  const std::vector<std::uint64_t> ns{1024, 4096, 16384};
  const auto r = rate_experiment(TimeSeriesModel{TarModel{0.6, -0.3, NoiseSpec::gaussian(1.0)}}, ns, 5, 3);
  ASSERT_EQ(r.per_n.size(), 3u);
  ASSERT_EQ(r.decomposition.size(), 15u);
  for (const auto& rec : r.records) {
    EXPECT_GE(rec.sup_error, 0.0);
    EXPECT_DOUBLE_EQ(rec.b, stone_bandwidth(rec.n));
    EXPECT_GT(rec.eval_points, 100u);
  }
  for (const auto& d : r.decomposition) {
    EXPECT_TRUE(d.holds) << "n=" << d.n << " rep=" << d.replication;
    EXPECT_LE(d.sup_error, d.bound);
  }
  EXPECT_FALSE(r.meets_design);
  ASSERT_TRUE(r.slope_ci);
  EXPECT_LE(r.slope_ci->first, r.slope_ci->second);
  EXPECT_EQ(r.target_slope, -1.0 / 3.0);
}

TEST(Rate, NarrowBinsHurtAtSmallN) {
  const std::vector<std::uint64_t> ns{1024, 2048};
  RateOptions narrow;
  narrow.bandwidth_scale = 0.25;
  const auto stone = rate_experiment(kAr1, ns, 10, 21);
  const auto quarter = rate_experiment(kAr1, ns, 10, 21, narrow);
  EXPECT_GT(quarter.per_n[0].median_sup_error, stone.per_n[0].median_sup_error);
}

TEST(Rate, SingleReplicationHasNoInterval) {
  const std::vector<std::uint64_t> ns{512, 1024};
  const auto r = rate_experiment(kAr1, ns, 1, 2);
  EXPECT_FALSE(r.slope_ci);
  EXPECT_FALSE(std::isnan(r.fitted_slope));
}

TEST(Serialize, RateCsvAndJson) {
  const std::vector<std::uint64_t> ns{512, 1024};
  const auto r = rate_experiment(kAr1, ns, 2, 4);
  const auto csv = rate_records_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,b,replication,sup_error,wall_time_ms");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  const auto mod = modulus_csv(r);
  EXPECT_EQ(mod.substr(0, mod.find('\n')), "n,b,replication,delta_n_b,term1,term2");

  const auto doc = nlohmann::json::parse(rate_report_to_json(r));
  EXPECT_EQ(doc["records"].size(), 4u);
  EXPECT_EQ(doc["per_n"][1]["n"], 1024);
  EXPECT_EQ(doc["target_slope"].get<double>(), -1.0 / 3.0);
  EXPECT_EQ(doc["fitted_slope"].get<double>(), r.fitted_slope);
  EXPECT_TRUE(doc["records"][0].contains("wall_time_ms"));

  RateOptions truth;
  truth.estimator = RateEstimator::truth;
  const auto degenerate = nlohmann::json::parse(rate_report_to_json(rate_experiment(kAr1, ns, 2, 4, truth)));
  EXPECT_TRUE(degenerate["fitted_slope"].is_null());
  EXPECT_TRUE(degenerate["slope_ci"].is_null());
}

TEST(Serialize, DeltaJson) {
  std::vector<DeltaEstimate> d{{0, 1.4, 0.01, 100}, {1, 0.7, 0.01, 100}};
  const auto s = check_summability(d, 0.5);
  const auto doc = nlohmann::json::parse(delta_report_to_json(d, s));
  EXPECT_EQ(doc["deltas"].size(), 2u);
  EXPECT_EQ(doc["summability"]["lags_used"].size(), 2u);
  EXPECT_NEAR(doc["summability"]["slope"].get<double>(), std::log(0.5), 1e-12);
}
