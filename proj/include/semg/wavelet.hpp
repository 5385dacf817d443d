#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace semg {

/// Orthogonal filter bank. Reconstruction filters are the time-reversed
/// decomposition filters.
template <typename Scalar, int Taps>
struct WaveletFilters {
  std::array<Scalar, Taps> dec_lo, dec_hi, rec_lo, rec_hi;

  static WaveletFilters from_scaling(const std::array<Scalar, Taps>& h) {
    // h is the reconstruction low-pass (scaling) filter.
    WaveletFilters f;
    for (int i = 0; i < Taps; ++i) {
      f.rec_lo[i] = h[i];
      f.dec_lo[i] = h[Taps - 1 - i];
      f.rec_hi[i] = (i % 2 == 0 ? Scalar(1) : Scalar(-1)) * h[Taps - 1 - i];
    }
    for (int i = 0; i < Taps; ++i) f.dec_hi[i] = f.rec_hi[Taps - 1 - i];
    return f;
  }
};

/// Daubechies wavelet with four vanishing moments (8 taps), coefficients from
/// spectral factorization, accurate to double precision.
template <typename Scalar = double>
const WaveletFilters<Scalar, 8>& db4() {
  static const auto f = WaveletFilters<Scalar, 8>::from_scaling({
      Scalar(0.23037781330889650086), Scalar(0.71484657055291564709), Scalar(0.63088076792985890788),
      Scalar(-0.027983769416859854211), Scalar(-0.18703481171909308408), Scalar(0.030841381835560763627),
      Scalar(0.032883011666885199735), Scalar(-0.010597401785069032105)});
  return f;
}

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Multilevel decomposition. details[0] is d1 (finest), approx is a_L.
template <typename Scalar>
struct WaveletDecomposition {
  std::vector<Vec<Scalar>> details;
  Vec<Scalar> approx;
  std::vector<Eigen::Index> input_lengths;  // length of the sequence entering each level

  int levels() const { return static_cast<int>(details.size()); }
};

namespace detail {

/// Half-sample symmetric extension index (x[-1] = x[0], x[n] = x[n-1]).
inline Eigen::Index symmetric_index(Eigen::Index k, Eigen::Index n) {
  const Eigen::Index period = 2 * n;
  k %= period;
  if (k < 0) k += period;
  return k < n ? k : period - 1 - k;
}

}  // namespace detail

/// One analysis step: out[o] = sum_j dec[j] * x_ext[2o + 1 - j], length floor((n + F - 1) / 2).
template <typename Derived, typename Scalar = typename Derived::Scalar, int Taps>
std::pair<Vec<Scalar>, Vec<Scalar>> dwt_step(const Eigen::MatrixBase<Derived>& x,
                                             const WaveletFilters<Scalar, Taps>& w) {
  const Eigen::Index n = x.size();
  const Eigen::Index out_len = (n + Taps - 1) / 2;
  Vec<Scalar> a(out_len), d(out_len);
  for (Eigen::Index o = 0; o < out_len; ++o) {
    const Eigen::Index i = 2 * o + 1;
    Scalar sa(0), sd(0);
    if (i - (Taps - 1) >= 0 && i < n) {
      for (int j = 0; j < Taps; ++j) {
        const Scalar v = x[i - j];
        sa += w.dec_lo[j] * v;
        sd += w.dec_hi[j] * v;
      }
    } else {
      for (int j = 0; j < Taps; ++j) {
        const Scalar v = x[detail::symmetric_index(i - j, n)];
        sa += w.dec_lo[j] * v;
        sd += w.dec_hi[j] * v;
      }
    }
    a[o] = sa;
    d[o] = sd;
  }
  return {std::move(a), std::move(d)};
}

/// One synthesis step producing `out_len` samples (at most 2n - F + 2).
/// Either input may be empty, meaning all zeros.
template <typename Scalar, int Taps>
Vec<Scalar> idwt_step(const Vec<Scalar>& approx, const Vec<Scalar>& detail_coeffs, Eigen::Index out_len,
                      const WaveletFilters<Scalar, Taps>& w) {
  const Eigen::Index n = std::max(approx.size(), detail_coeffs.size());
  Vec<Scalar> y = Vec<Scalar>::Zero(out_len);
  // y[m] = sum_k a[k] rec_lo[m + F - 2 - 2k] + d[k] rec_hi[m + F - 2 - 2k]
  for (Eigen::Index m = 0; m < out_len; ++m) {
    const Eigen::Index p = m + Taps - 2;
    const Eigen::Index k_lo = (p - Taps + 2) / 2;  // ceil((p - F + 1) / 2), p >= F - 2
    const Eigen::Index k_hi = std::min<Eigen::Index>(n - 1, p / 2);
    Scalar acc(0);
    for (Eigen::Index k = k_lo; k <= k_hi; ++k) {
      const Eigen::Index j = p - 2 * k;
      if (approx.size()) acc += approx[k] * w.rec_lo[j];
      if (detail_coeffs.size()) acc += detail_coeffs[k] * w.rec_hi[j];
    }
    y[m] = acc;
  }
  return y;
}

template <typename Derived, typename Scalar = typename Derived::Scalar, int Taps>
WaveletDecomposition<Scalar> wavedec(const Eigen::MatrixBase<Derived>& x, int levels,
                                     const WaveletFilters<Scalar, Taps>& w) {
  WaveletDecomposition<Scalar> dec;
  Vec<Scalar> current = x;
  for (int l = 0; l < levels; ++l) {
    dec.input_lengths.push_back(current.size());
    auto [a, d] = dwt_step(current, w);
    dec.details.push_back(std::move(d));
    current = std::move(a);
  }
  dec.approx = std::move(current);
  return dec;
}

/// Signal-domain contribution of detail level `level` (1-based) alone.
template <typename Scalar, int Taps>
Vec<Scalar> reconstruct_detail(const WaveletDecomposition<Scalar>& dec, int level,
                               const WaveletFilters<Scalar, Taps>& w) {
  const auto l = static_cast<std::size_t>(level - 1);
  Vec<Scalar> cur = idwt_step<Scalar, Taps>(Vec<Scalar>(), dec.details[l], dec.input_lengths[l], w);
  for (std::size_t k = l; k-- > 0;) cur = idwt_step<Scalar, Taps>(cur, Vec<Scalar>(), dec.input_lengths[k], w);
  return cur;
}

/// Signal-domain contribution of the coarsest approximation alone.
template <typename Scalar, int Taps>
Vec<Scalar> reconstruct_approx(const WaveletDecomposition<Scalar>& dec, const WaveletFilters<Scalar, Taps>& w) {
  Vec<Scalar> cur = dec.approx;
  for (std::size_t k = dec.details.size(); k-- > 0;) cur = idwt_step<Scalar, Taps>(cur, Vec<Scalar>(), dec.input_lengths[k], w);
  return cur;
}

}  // namespace semg
