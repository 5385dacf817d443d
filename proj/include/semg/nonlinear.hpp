#pragma once

#include "semg/time_domain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace semg {

template <typename Derived>
typename Derived::Scalar population_std(const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  const auto mean = x.mean();
  return sqrt((x.array() - mean).square().mean());
}

/// Least-squares slope of y against x.
template <typename DX, typename DY>
typename DX::Scalar ols_slope(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  const auto xc = (x.array() - x.mean()).eval();
  const auto yc = (y.array() - y.mean()).eval();
  return (xc * yc).sum() / xc.square().sum();
}

/// Lag-1 autocorrelation coefficient around the window mean.
template <typename Derived>
Estimate<typename Derived::Scalar> lag1_autocorrelation(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  const auto c = (x.array() - x.mean()).eval();
  const Scalar denom = c.square().sum();
  if (!(denom > 0)) return {Scalar(0), true};
  return {(c.head(n - 1) * c.tail(n - 1)).sum() / denom, false};
}

template <typename Scalar>
struct EntropyPair {
  Estimate<Scalar> approximate;
  Estimate<Scalar> sample;
};

/// Approximate entropy (self-matches included) and sample entropy (self-matches
/// excluded) with Chebyshev template matching at tolerance r, in one pass
/// over template pairs.
template <typename Derived>
EntropyPair<typename Derived::Scalar> approximate_and_sample_entropy(const Eigen::MatrixBase<Derived>& x, int m,
                                                                    typename Derived::Scalar r) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  EntropyPair<Scalar> out;
  if (n <= m + 1) {
    out.approximate = {Scalar(0), true};
    out.sample = {Scalar(0), true};
    return out;
  }
  const Eigen::Index tm = n - m + 1;  // templates of length m
  const Eigen::Index tm1 = n - m;     // templates of length m + 1
  std::vector<std::int64_t> cm(static_cast<std::size_t>(tm), 1), cm1(static_cast<std::size_t>(tm1), 1);
  std::int64_t pairs_m = 0, pairs_m1 = 0;
  for (Eigen::Index i = 0; i < tm; ++i) {
    for (Eigen::Index j = i + 1; j < tm; ++j) {
      bool match = true;
      for (int k = 0; k < m; ++k) {
        if (std::abs(x[i + k] - x[j + k]) > r) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      ++cm[static_cast<std::size_t>(i)];
      ++cm[static_cast<std::size_t>(j)];
      if (j < tm1) {
        ++pairs_m;
        if (std::abs(x[i + m] - x[j + m]) <= r) {
          ++pairs_m1;
          ++cm1[static_cast<std::size_t>(i)];
          ++cm1[static_cast<std::size_t>(j)];
        }
      }
    }
  }
  Scalar phi_m(0), phi_m1(0);
  for (auto c : cm) phi_m += std::log(static_cast<Scalar>(c) / static_cast<Scalar>(tm));
  for (auto c : cm1) phi_m1 += std::log(static_cast<Scalar>(c) / static_cast<Scalar>(tm1));
  out.approximate = {phi_m / static_cast<Scalar>(tm) - phi_m1 / static_cast<Scalar>(tm1), false};
  if (pairs_m == 0 || pairs_m1 == 0 || !(r > 0))
    out.sample = {Scalar(0), true};
  else
    out.sample = {-std::log(static_cast<Scalar>(pairs_m1) / static_cast<Scalar>(pairs_m)), false};
  return out;
}

/// Lempel-Ziv (1976) phrase count via the Kaspar-Schuster scan.
inline std::int64_t lempel_ziv_phrases(std::span<const std::uint8_t> s) {
  const auto n = static_cast<std::int64_t>(s.size());
  if (n == 0) return 0;
  if (n == 1) return 1;
  std::int64_t i = 0, k = 1, l = 1, c = 1, k_max = 1;
  while (true) {
    if (s[static_cast<std::size_t>(i + k - 1)] == s[static_cast<std::size_t>(l + k - 1)]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      k_max = std::max(k, k_max);
      ++i;
      if (i == l) {
        ++c;
        l += k_max;
        if (l + 1 > n) break;
        i = 0;
        k = 1;
        k_max = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

template <typename Derived>
typename Derived::Scalar median(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> v(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) v[static_cast<std::size_t>(i)] = x[i];
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const Scalar hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const Scalar lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lo + hi) / Scalar(2);
}

/// 1 where x exceeds its median, else 0.
template <typename Derived>
std::vector<std::uint8_t> binarize_by_median(const Eigen::MatrixBase<Derived>& x) {
  const auto med = median(x);
  std::vector<std::uint8_t> b(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) b[static_cast<std::size_t>(i)] = x[i] > med ? 1 : 0;
  return b;
}

/// Phrase count normalized by n / log2(n).
template <typename Derived>
typename Derived::Scalar lempel_ziv_complexity(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const auto bits = binarize_by_median(x);
  const Scalar n = static_cast<Scalar>(bits.size());
  if (bits.size() < 2) return Scalar(0);
  return static_cast<Scalar>(lempel_ziv_phrases(bits)) / (n / std::log2(n));
}

/// Higuchi fractal dimension over k = 1..k_max.
template <typename Derived>
Estimate<typename Derived::Scalar> higuchi_fd(const Eigen::MatrixBase<Derived>& x, int k_max) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> log_inv_k(k_max), log_len(k_max);
  for (int k = 1; k <= k_max; ++k) {
    Scalar total(0);
    int used = 0;
    for (int m = 0; m < k; ++m) {
      const Eigen::Index steps = (n - 1 - m) / k;
      if (steps < 1) continue;
      Scalar sum(0);
      for (Eigen::Index i = 1; i <= steps; ++i) sum += std::abs(x[m + i * k] - x[m + (i - 1) * k]);
      total += sum * static_cast<Scalar>(n - 1) / (static_cast<Scalar>(steps) * k) / k;
      ++used;
    }
    const Scalar lk = used ? total / used : Scalar(0);
    if (!(lk > 0)) return {Scalar(0), true};
    log_inv_k[k - 1] = std::log(Scalar(1) / k);
    log_len[k - 1] = std::log(lk);
  }
  return {ols_slope(log_inv_k, log_len), false};
}

/// Permutation entropy of ordinal patterns, normalized by ln(order!). Ties
/// rank by position.
template <typename Derived>
typename Derived::Scalar permutation_entropy(const Eigen::MatrixBase<Derived>& x, int order, int delay) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index span = static_cast<Eigen::Index>(order - 1) * delay;
  const Eigen::Index count = x.size() - span;
  if (count < 1) return Scalar(0);
  std::size_t fact = 1;
  for (int i = 2; i <= order; ++i) fact *= static_cast<std::size_t>(i);
  std::vector<std::int64_t> hist(fact, 0);
  std::vector<int> idx(static_cast<std::size_t>(order));
  for (Eigen::Index t = 0; t < count; ++t) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x[t + a * delay] < x[t + b * delay]; });
    // Lehmer code of the ranking permutation
    std::size_t code = 0;
    for (int i = 0; i < order; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < order; ++j) smaller += idx[static_cast<std::size_t>(j)] < idx[static_cast<std::size_t>(i)];
      code = code * static_cast<std::size_t>(order - i) + static_cast<std::size_t>(smaller);
    }
    ++hist[code];
  }
  Scalar h(0);
  for (auto c : hist) {
    if (c == 0) continue;
    const Scalar p = static_cast<Scalar>(c) / static_cast<Scalar>(count);
    h -= p * std::log(p);
  }
  return h / std::log(static_cast<Scalar>(fact));
}

/// Determinism of the recurrence plot: share of recurrent pairs lying on
/// diagonal lines of length >= min_line. Delay embedding of dimension m, lag
/// tau; Euclidean distances; threshold = fraction * max distance. The line of
/// identity is excluded.
template <typename Derived>
Estimate<typename Derived::Scalar> rqa_determinism(const Eigen::MatrixBase<Derived>& x, int m, int tau,
                                                  typename Derived::Scalar fraction, int min_line = 2) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index points = x.size() - static_cast<Eigen::Index>(m - 1) * tau;
  if (points < 2) return {Scalar(0), true};
  auto dist2 = [&](Eigen::Index i, Eigen::Index j) {
    Scalar s(0);
    for (int e = 0; e < m; ++e) {
      const Scalar d = x[i + e * tau] - x[j + e * tau];
      s += d * d;
    }
    return s;
  };
  Scalar max2(0);
  for (Eigen::Index k = 1; k < points; ++k)
    for (Eigen::Index i = 0; i + k < points; ++i) max2 = std::max(max2, dist2(i, i + k));
  if (!(max2 > 0)) return {Scalar(0), true};
  const Scalar eps2 = fraction * fraction * max2;
  std::int64_t recurrent = 0, on_lines = 0;
  for (Eigen::Index k = 1; k < points; ++k) {
    std::int64_t run = 0;
    for (Eigen::Index i = 0; i + k < points; ++i) {
      if (dist2(i, i + k) <= eps2) {
        ++run;
      } else {
        recurrent += run;
        if (run >= min_line) on_lines += run;
        run = 0;
      }
    }
    recurrent += run;
    if (run >= min_line) on_lines += run;
  }
  if (recurrent == 0) return {Scalar(0), true};
  return {static_cast<Scalar>(on_lines) / static_cast<Scalar>(recurrent), false};
}

/// Detrended fluctuation analysis exponent over box sizes min_scale,
/// 2*min_scale, ... <= max_scale (non-overlapping boxes, linear detrending).
template <typename Derived>
Estimate<typename Derived::Scalar> dfa_exponent(const Eigen::MatrixBase<Derived>& x, Eigen::Index min_scale,
                                               Eigen::Index max_scale) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x.size();
  Vector profile(n);
  const Scalar mean = x.mean();
  Scalar run(0);
  for (Eigen::Index i = 0; i < n; ++i) profile[i] = (run += x[i] - mean);

  std::vector<Scalar> log_s, log_f;
  for (Eigen::Index s = min_scale; s <= max_scale; s *= 2) {
    const Eigen::Index boxes = n / s;
    if (boxes < 1) break;
    // regressor t = 0..s-1 centered
    const Scalar t_mean = static_cast<Scalar>(s - 1) / 2;
    Scalar sxx(0);
    for (Eigen::Index t = 0; t < s; ++t) sxx += (t - t_mean) * (t - t_mean);
    Scalar resid(0);
    for (Eigen::Index b = 0; b < boxes; ++b) {
      const auto seg = profile.segment(b * s, s);
      const Scalar y_mean = seg.mean();
      Scalar sxy(0), syy(0);
      for (Eigen::Index t = 0; t < s; ++t) {
        const Scalar dy = seg[t] - y_mean;
        sxy += (t - t_mean) * dy;
        syy += dy * dy;
      }
      resid += std::max(Scalar(0), syy - sxy * sxy / sxx);
    }
    const Scalar f = std::sqrt(resid / static_cast<Scalar>(boxes * s));
    if (!(f > 0)) return {Scalar(0), true};
    log_s.push_back(std::log(static_cast<Scalar>(s)));
    log_f.push_back(std::log(f));
  }
  if (log_s.size() < 2) return {Scalar(0), true};
  const Eigen::Map<const Vector> ls(log_s.data(), static_cast<Eigen::Index>(log_s.size()));
  const Eigen::Map<const Vector> lf(log_f.data(), static_cast<Eigen::Index>(log_f.size()));
  return {ols_slope(ls, lf), false};
}

}  // namespace semg
