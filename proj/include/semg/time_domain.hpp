#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace semg {

/// Value plus a marker for inputs where the descriptor is undefined.
template <typename Scalar>
struct Estimate {
  Scalar value{0};
  bool degenerate = false;
};

template <typename Derived>
typename Derived::Scalar integrated_emg(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseAbs().sum();
}

template <typename Derived>
typename Derived::Scalar mean_absolute_value(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseAbs().mean();
}

template <typename Derived>
typename Derived::Scalar root_mean_square(const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  return sqrt(x.squaredNorm() / static_cast<typename Derived::Scalar>(x.size()));
}

/// Difference absolute standard deviation: sqrt(sum (x[i+1]-x[i])^2 / (N-1)).
template <typename Derived>
typename Derived::Scalar dasdv(const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  const auto n = x.size();
  return sqrt((x.tail(n - 1) - x.head(n - 1)).squaredNorm() / static_cast<typename Derived::Scalar>(n - 1));
}

/// Mean consecutive variation: sum |x[i+1]-x[i]| / (N-1).
template <typename Derived>
typename Derived::Scalar mean_consecutive_variation(const Eigen::MatrixBase<Derived>& x) {
  const auto n = x.size();
  return (x.tail(n - 1) - x.head(n - 1)).cwiseAbs().sum() / static_cast<typename Derived::Scalar>(n - 1);
}

/// Mean of the rectified signal after a `smoothing_len`-sample moving average
/// (valid part only). Each |x[i]| is weighted by the number of averaging
/// windows that contain it.
template <typename Derived>
typename Derived::Scalar averaged_emg(const Eigen::MatrixBase<Derived>& x, Eigen::Index smoothing_len) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  const Eigen::Index len = std::clamp<Eigen::Index>(smoothing_len, 1, n);
  const Eigen::Index outputs = n - len + 1;
  Scalar acc(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index covered = std::min(i, outputs - 1) - std::max<Eigen::Index>(0, i - len + 1) + 1;
    acc += static_cast<Scalar>(covered) * std::abs(x[i]);
  }
  return acc / (static_cast<Scalar>(len) * static_cast<Scalar>(outputs));
}

/// Sign changes between neighbours whose step is at least `threshold`.
template <typename Derived>
Eigen::Index zero_crossings(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar threshold) {
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
    if (x[i] * x[i + 1] < 0 && std::abs(x[i] - x[i + 1]) >= threshold) ++count;
  return count;
}

/// Interior points where (x[i]-x[i-1]) * (x[i]-x[i+1]) exceeds `threshold`.
template <typename Derived>
Eigen::Index slope_sign_changes(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar threshold) {
  Eigen::Index count = 0;
  for (Eigen::Index i = 1; i + 1 < x.size(); ++i)
    if ((x[i] - x[i - 1]) * (x[i] - x[i + 1]) > threshold) ++count;
  return count;
}

/// Willison amplitude: steps |x[i]-x[i+1]| strictly above `threshold`.
template <typename Derived>
Eigen::Index willison_amplitude(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar threshold) {
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
    if (std::abs(x[i] - x[i + 1]) > threshold) ++count;
  return count;
}

}  // namespace semg
