#include "oracle/naive_features.hpp"
#include "semg/engine.hpp"
#include "semg/spectral.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace semg;
using enum FeatureId;

namespace {
constexpr double kFs = 2000.0;
constexpr double kDf = 2.0;  // 1000-sample window
}  // namespace

TEST_CASE("hann window is periodic") {
  const auto w = hann_window(8);
  CHECK(w[0] == 0.0);
  CHECK(w[4] == doctest::Approx(1.0));
  CHECK(w[2] == doctest::Approx(0.5));
  CHECK(w[6] == doctest::Approx(0.5));
}

TEST_CASE("periodogram matches a direct DFT") {
  for (Index n : {1000, 999, 128, 17}) {
    const auto x = testing::gaussian(n, static_cast<std::uint64_t>(n));
    const auto p = periodogram(x, kFs);
    const auto ref = oracle::psd_direct(testing::to_std(x), kFs);
    REQUIRE(p.size() == static_cast<Index>(ref.size()));
    const double scale = p.maxCoeff();
    for (Index k = 0; k < p.size(); ++k) CHECK(std::abs(p[k] - ref[static_cast<std::size_t>(k)]) <= 1e-10 * scale);
  }
}

TEST_CASE("zero window gives an all-zero cache") {
  const auto cache = build_spectral_cache(Eigen::VectorXd::Zero(1000), kFs, EngineConfig{});
  CHECK(cache.psd.isZero(0));
  CHECK(cache.stft_psd.isZero(0));
  for (const auto& d : cache.dwt.details) CHECK(d.isZero(0));
  CHECK(cache.dwt.approx.isZero(0));
  const auto fv = testing::features_of(Eigen::VectorXd::Zero(1000));
  for (auto id : {TP, MPF, MF, MDF, BSE, FSM2, SMR, PKF, IMPF, IMF, IMNF, IMFB, ERHL}) {
    CHECK(fv[id] == 0.0);
    CHECK(fv.degenerate(id));
  }
}

TEST_CASE("cache shapes") {
  const auto cache = build_spectral_cache(testing::gaussian(1000, 1), kFs, EngineConfig{});
  CHECK(cache.psd.size() == 501);
  CHECK(cache.df == kDf);
  CHECK(cache.freqs[250] == 500.0);
  CHECK(cache.stft_psd.rows() == 65);
  CHECK(cache.stft_psd.cols() == 14);
  CHECK(cache.dwt.levels() == 5);
  CHECK((cache.psd.array() >= 0).all());
}

TEST_CASE("short window clamps the frame with a diagnostic") {
  Diagnostics diag;
  const auto cache = build_spectral_cache(testing::gaussian(100, 1), kFs, EngineConfig{}, &diag);
  CHECK_FALSE(diag.empty());
  CHECK(cache.stft_psd.cols() == 1);
  CHECK(cache.stft_psd.rows() == 51);
}

TEST_CASE("single tone: dominant bin and MPF = MF = MDF") {
  for (double hz : {100.0, 101.0, 137.3, 250.0}) {
    const auto x = testing::sine(1000, hz, kFs);
    const auto cache = build_spectral_cache(x, kFs, EngineConfig{});
    Index peak;
    cache.psd.maxCoeff(&peak);
    CHECK(std::abs(cache.freqs[peak] - hz) <= kDf / 2 + 1e-9);
    const auto fv = testing::features_of(x);
    CHECK(std::abs(fv[MPF] - hz) <= kDf);
    CHECK(std::abs(fv[MF] - hz) <= kDf);
    CHECK(std::abs(fv[MDF] - hz) <= kDf);
    CHECK(std::abs(fv[PKF] - hz) <= kDf / 2 + 1e-9);
  }
}

TEST_CASE("two equal tones centre the mean power frequency") {
  const Eigen::VectorXd x = testing::sine(1000, 80, kFs) + testing::sine(1000, 120, kFs, 1.0, 0.7);
  const auto fv = testing::features_of(x);
  CHECK(std::abs(fv[MPF] - 100.0) <= kDf);
}

TEST_CASE("Parseval: sum psd df equals tapered power") {
  double mean_ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const double sigma = 0.5 + 0.1 * static_cast<double>(seed);
    const auto x = testing::gaussian(1000, seed, sigma);
    Eigen::VectorXd windowed;
    const auto p = periodogram(x, kFs, nullptr, &windowed);
    const auto w = hann_window(1000);
    const double integral = p.sum() * kDf;
    CHECK(testing::rel_err(integral, windowed.squaredNorm() / w.squaredNorm()) <= 1e-12);
    mean_ratio += integral / (sigma * sigma) / 50.0;
  }
  CHECK(mean_ratio == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("ERHL separates low and high tones") {
  CHECK(testing::features_of(testing::sine(1000, 50, kFs))[ERHL] > 100.0);
  CHECK(testing::features_of(testing::sine(1000, 300, kFs))[ERHL] < 0.01);
}

TEST_CASE("stationary 100 Hz tone: IMNF near 10 ms") {
  const auto fv = testing::features_of(testing::sine(1000, 100, kFs));
  const double frame_df = kFs / 128.0;
  CHECK(fv[IMNF] > 1.0 / (100.0 + frame_df));
  CHECK(fv[IMNF] < 1.0 / (100.0 - frame_df));
  CHECK(fv[IMFB] > 1.0 / (100.0 + frame_df));
  CHECK(fv[IMFB] < 1.0 / (100.0 - frame_df));
}

TEST_CASE("chirp: frame median frequencies fall and match the oracle") {
  Eigen::VectorXd x(1000);
  const double T = 0.5, f1 = 200, f2 = 80;
  for (Index i = 0; i < 1000; ++i) {
    const double t = static_cast<double>(i) / kFs;
    x[i] = std::sin(2 * std::numbers::pi * (f1 * t + (f2 - f1) * t * t / (2 * T)));
  }
  const EngineConfig cfg;
  const auto cache = build_spectral_cache(x, kFs, cfg);
  const auto ref = oracle::frame_median_frequencies(testing::to_std(x), kFs, cfg);
  REQUIRE(static_cast<Index>(ref.size()) == cache.stft_psd.cols());
  double prev = 1e9;
  for (Index f = 0; f < cache.stft_psd.cols(); ++f) {
    const auto st = band_stats(cache.stft_psd.col(f), cache.stft_freqs, cache.stft_df, cfg.band_low, cfg.band_high);
    CHECK(testing::rel_err(st.median_freq, ref[static_cast<std::size_t>(f)]) <= 1e-9);
    CHECK(st.median_freq < prev);
    prev = st.median_freq;
  }
}

TEST_CASE("frequency features match the naive PSD-integration oracle") {
  const EngineConfig cfg;
  const auto chain_x = [](std::uint64_t seed) {
    // band-limited: moving sum of white noise
    const auto w = testing::gaussian(1010, seed);
    Eigen::VectorXd x(1000);
    for (Index i = 0; i < 1000; ++i) x[i] = w.segment(i, 4).sum();
    return x;
  };
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = chain_x(seed);
    const auto fv = testing::features_of(x);
    const auto ref = oracle::all_features(testing::to_std(x), kFs, cfg);
    for (auto id : {SMR, FSM2, TP, MPF, MF, MDF, IMPF, IMF, BSE, ERHL, IMNF, IMFB, PKF}) {
      INFO(feature_name(id));
      CHECK(testing::rel_err(fv[id], ref[id]) <= 1e-9);
    }
  }
}

TEST_CASE("spectral sanity ranges and scale invariance") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto x = testing::gaussian(1000, seed);
    const auto fv = testing::features_of(x);
    CHECK(fv[TP] >= 0);
    CHECK(fv[MDF] >= 20.0);
    CHECK(fv[MDF] <= 450.0);
    CHECK(fv[BSE] >= 0);
    CHECK(fv[BSE] <= 1);
    const auto scaled = testing::features_of(Eigen::VectorXd(7.5 * x));
    for (auto id : {MDF, MPF, MF, BSE}) CHECK(testing::rel_err(scaled[id], fv[id]) <= 1e-12);
    CHECK(testing::rel_err(scaled[TP], 56.25 * fv[TP]) <= 1e-12);
  }
}

TEST_CASE("circular shift of a periodic window moves MDF and MPF by at most a bin") {
  // tones on exact bins make the window periodic
  Eigen::VectorXd x = testing::sine(1000, 60, kFs) + 0.5 * testing::sine(1000, 130, kFs, 1.0, 0.3) +
                      0.25 * testing::sine(1000, 222, kFs, 1.0, 1.1);
  const auto base = testing::features_of(x);
  for (Index shift : {1, 37, 250, 511, 999}) {
    Eigen::VectorXd y(1000);
    for (Index i = 0; i < 1000; ++i) y[i] = x[(i + shift) % 1000];
    const auto fv = testing::features_of(y);
    CHECK(std::abs(fv[MDF] - base[MDF]) <= kDf);
    CHECK(std::abs(fv[MPF] - base[MPF]) <= kDf);
  }
}
