#pragma once

#include "semg/engine.hpp"
#include "semg/signal.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline Eigen::VectorXd gaussian(Eigen::Index n, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = g(rng);
  return x;
}

inline Eigen::VectorXd sine(Eigen::Index n, double hz, double fs, double amp = 1.0, double phase = 0.0) {
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = amp * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / fs + phase);
  return x;
}

inline std::vector<double> to_std(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

inline semg::SignalRecord record(const Eigen::MatrixXd& samples, double fs = 2000.0) {
  semg::SignalRecord s;
  s.samples = samples;
  s.sampling_rate = fs;
  for (Eigen::Index c = 0; c < samples.cols(); ++c) s.channels.push_back("ch" + std::to_string(c));
  return s;
}

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Every descriptor of a single window spanning all of `x`.
inline semg::FeatureVector features_of(const Eigen::VectorXd& x, double fs = 2000.0,
                                       const semg::EngineConfig& cfg = {}) {
  const auto s = record(x, fs);
  return semg::compute_window_features(semg::WindowView(s, 0, 0, x.size()), cfg);
}

}  // namespace testing
