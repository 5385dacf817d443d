#include "oracle/naive_features.hpp"
#include "semg/engine.hpp"
#include "semg/time_domain.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace semg;
using enum FeatureId;

namespace {
const FeatureId kTime[] = {AEMG, iEMG, RMS, MAV, MCV, DASDV, ZC, SSC, WA};
}

TEST_CASE("canonical table") {
  const auto& t = feature_table();
  int inc = 0, dec = 0, aux = 0;
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    CHECK(t[i].id == feature_at(i));
    CHECK(feature_from_name(t[i].name) == t[i].id);
    names.insert(t[i].name);
    inc += t[i].table_group == TableGroup::Increasing;
    dec += t[i].table_group == TableGroup::Decreasing;
    aux += t[i].table_group == TableGroup::Auxiliary;
  }
  CHECK(names.size() == kFeatureCount);
  CHECK(inc == 19);
  CHECK(dec == 15);
  CHECK(aux == 2);
  CHECK_FALSE(is_grouped(PKF));
  CHECK(is_grouped(WENT));
  CHECK_FALSE(feature_from_name("XYZ").has_value());
}

TEST_CASE("non-finite values are flagged, never stored") {
  FeatureVector fv;
  fv.set(RMS, std::numeric_limits<double>::quiet_NaN());
  CHECK(fv[RMS] == 0.0);
  CHECK(fv.degenerate(RMS));
  fv.set(MAV, std::numeric_limits<double>::infinity());
  CHECK(fv.degenerate(MAV));
  fv.set(MAV, 1.5);
  CHECK_FALSE(fv.degenerate(MAV));
  CHECK(fv.quality == (std::uint64_t{1} << index_of(RMS)));
}

TEST_CASE("constant window") {
  FeatureVector fv;
  compute_time_features(Eigen::VectorXd::Constant(1000, 2.0), 2000, EngineConfig{}, fv);
  CHECK(fv[RMS] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fv[MAV] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fv[iEMG] == doctest::Approx(2000.0).epsilon(1e-15));
  CHECK(fv[AEMG] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fv[DASDV] == 0.0);
  CHECK(fv[MCV] == 0.0);
  CHECK(fv[ZC] == 0.0);
  CHECK(fv[SSC] == 0.0);
  CHECK(fv[WA] == 0.0);
  CHECK(fv.quality == 0);
}

TEST_CASE("alternating +-1") {
  Eigen::VectorXd x(1000);
  for (Index i = 0; i < 1000; ++i) x[i] = i % 2 ? -1.0 : 1.0;
  FeatureVector fv;
  compute_time_features(x, 2000, EngineConfig{}, fv);
  CHECK(fv[ZC] == 999);
  CHECK(fv[SSC] == 998);
  CHECK(fv[WA] == 999);
  CHECK(fv[DASDV] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fv[MCV] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fv[RMS] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("all-zero window flags every time feature") {
  FeatureVector fv;
  compute_time_features(Eigen::VectorXd::Zero(1000), 2000, EngineConfig{}, fv);
  for (auto id : kTime) {
    CHECK(fv[id] == 0.0);
    CHECK(fv.degenerate(id));
  }
}

TEST_CASE("too-short window is a usage error") {
  FeatureVector fv;
  CHECK_THROWS_AS(compute_time_features(Eigen::VectorXd::Ones(1), 2000, EngineConfig{}, fv), UsageError);
}

TEST_CASE("thresholds") {
  // diffs of 0.5 cross zero; raising the ZC threshold above 0.5 removes them
  Eigen::VectorXd x(6);
  x << 0.25, -0.25, 0.25, -0.25, 0.25, -0.25;
  CHECK(zero_crossings(x, 0.0) == 5);
  CHECK(zero_crossings(x, 0.5) == 5);
  CHECK(zero_crossings(x, 0.51) == 0);
  CHECK(slope_sign_changes(x, 0.0) == 4);
  CHECK(slope_sign_changes(x, 0.25) == 0);  // product equals 0.25, strict
  CHECK(willison_amplitude(x, 0.5) == 0);   // strict
  CHECK(willison_amplitude(x, 0.49) == 5);
}

TEST_CASE("seeded windows match the naive oracle") {
  const EngineConfig cfg;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Eigen::VectorXd x = testing::gaussian(1000, seed, 0.3 * static_cast<double>(seed));
    FeatureVector fv;
    compute_time_features(x, 2000, cfg, fv);
    const auto ref = oracle::all_features(testing::to_std(x), 2000, cfg);
    for (auto id : kTime) {
      INFO(feature_name(id), " seed ", seed);
      if (id == ZC || id == SSC || id == WA)
        CHECK(fv[id] == ref[id]);
      else
        CHECK(testing::rel_err(fv[id], ref[id]) <= 1e-12);
    }
  }
}

TEST_CASE("amplitude features scale, counts do not") {
  const Eigen::VectorXd x = testing::gaussian(1000, 77);
  FeatureVector a, b;
  compute_time_features(x, 2000, EngineConfig{}, a);
  for (double k : {0.001, 3.0, 250.0}) {
    compute_time_features(Eigen::VectorXd(k * x), 2000, EngineConfig{}, b);
    for (auto id : {AEMG, iEMG, RMS, MAV, MCV, DASDV}) CHECK(testing::rel_err(b[id], k * a[id]) <= 1e-12);
    for (auto id : {ZC, SSC, WA}) CHECK(b[id] == a[id]);
  }
}
