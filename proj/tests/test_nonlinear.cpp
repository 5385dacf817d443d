#include "oracle/naive_features.hpp"
#include "semg/engine.hpp"
#include "semg/nonlinear.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace semg;
using enum FeatureId;

namespace {
std::vector<std::uint8_t> bits_of(const std::string& s) {
  std::vector<std::uint8_t> b;
  for (char c : s) b.push_back(c == '1');
  return b;
}
}  // namespace

TEST_CASE("Lempel-Ziv phrase count agrees with an exhaustive parse") {
  CHECK(lempel_ziv_phrases(bits_of("0101010101")) == oracle::lz_phrases_bruteforce("0101010101"));
  CHECK(oracle::lz_phrases_bruteforce("0101010101") == 3);
  CHECK(lempel_ziv_phrases(bits_of("0001101001000101")) == 6);
  CHECK(lempel_ziv_phrases(bits_of("0")) == 1);
  CHECK(lempel_ziv_phrases(bits_of("")) == 0);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(1, 300), bit(0, 1);
  std::bernoulli_distribution sparse(0.1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(trial % 3 == 0 ? (sparse(rng) ? '1' : '0') : static_cast<char>('0' + bit(rng)));
    INFO(s);
    CHECK(lempel_ziv_phrases(bits_of(s)) == oracle::lz_phrases_bruteforce(s));
  }
}

TEST_CASE("median binarization") {
  Eigen::VectorXd x(4);
  x << 3, 1, 4, 2;
  CHECK(median(x) == 2.5);
  const auto b = binarize_by_median(x);
  CHECK(b == std::vector<std::uint8_t>{1, 0, 1, 0});
  CHECK(median(Eigen::VectorXd(x.head(3))) == 3);
}

TEST_CASE("constant window") {
  const auto fv = testing::features_of(Eigen::VectorXd::Constant(1000, 1.5));
  CHECK(fv.degenerate(ACC));
  CHECK(fv.degenerate(DET));
  CHECK(fv.degenerate(SE));
  CHECK(fv[AE] == 0.0);
  CHECK_FALSE(fv.degenerate(AE));
  // all samples tie the median, so every bit is 0: the trivial sequence
  const std::vector<std::uint8_t> zeros(1000, 0);
  CHECK(fv[LZC] == doctest::Approx(static_cast<double>(lempel_ziv_phrases(zeros)) / (1000 / std::log2(1000.0))));
  CHECK(lempel_ziv_phrases(zeros) == 2);
}

TEST_CASE("sine is more regular than noise") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sine = testing::features_of(testing::sine(1000, 37.0 + static_cast<double>(seed), 2000));
    const auto noise = testing::features_of(testing::gaussian(1000, seed));
    CHECK(sine[SE] < noise[SE]);
    CHECK(sine[LZC] < noise[LZC]);
  }
}

TEST_CASE("nonlinear features match textbook implementations") {
  const EngineConfig cfg;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Eigen::VectorXd x = testing::gaussian(1000, seed + 40);
    if (seed % 2 == 0) x += testing::sine(1000, 90, 2000, 2.0);
    const auto fv = testing::features_of(x);
    const auto ref = oracle::all_features(testing::to_std(x), 2000, cfg);
    for (auto id : {DET, ACC, AE, SE, LZC, FD, BE, DFA}) {
      INFO(feature_name(id), " seed ", seed);
      CHECK(testing::rel_err(fv[id], ref[id]) <= 1e-9);
      CHECK(fv.degenerate(id) == ref.degenerate[index_of(id)]);
    }
  }
}

TEST_CASE("nonlinear sanity and scale invariance") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = testing::gaussian(1000, seed + 300);
    const auto fv = testing::features_of(x);
    CHECK(fv[DET] >= 0);
    CHECK(fv[DET] <= 1);
    CHECK(fv[BE] >= 0);
    CHECK(fv[BE] <= 1);
    const auto s = testing::features_of(Eigen::VectorXd(0.01 * x));
    for (auto id : {ACC, FD, BE, LZC, AE, SE, DET}) CHECK(testing::rel_err(s[id], fv[id]) <= 1e-9);
  }
}

TEST_CASE("white noise DFA exponent is near one half") {
  double mean = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    mean += testing::features_of(testing::gaussian(1000, seed + 500))[DFA] / 10;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.15));
}
