#include "semg/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <atomic>
#include <cmath>
#include <numbers>

namespace semg {
namespace {

std::atomic<std::uint64_t> g_full_window_ffts{0};

Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    return f;
  }();
  return fft;
}

bool in_band(double f, double lo, double hi) { return f >= lo - 1e-9 && f <= hi + 1e-9; }

Eigen::VectorXd bin_frequencies(Index bins, double df) {
  Eigen::VectorXd f(bins);
  for (Index k = 0; k < bins; ++k) f[k] = static_cast<double>(k) * df;
  return f;
}

}  // namespace

Eigen::VectorXd hann_window(Index n) {
  Eigen::VectorXd w(n);
  for (Index i = 0; i < n; ++i) w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n));
  return w;
}

Eigen::VectorXd periodogram(const Eigen::Ref<const Eigen::VectorXd>& x, double fs, Eigen::VectorXcd* spectrum,
                            Eigen::VectorXd* windowed) {
  const Index n = x.size();
  const Eigen::VectorXd w = hann_window(n);
  Eigen::VectorXd xw = x.cwiseProduct(w);
  Eigen::VectorXcd spec;
  thread_fft().fwd(spec, xw);
  const double scale = 1.0 / (fs * w.squaredNorm());
  Eigen::VectorXd psd = spec.cwiseAbs2() * scale;
  const Index bins = psd.size();
  for (Index k = 1; k < bins; ++k)
    if (!(n % 2 == 0 && k == n / 2)) psd[k] *= 2.0;
  if (spectrum) *spectrum = std::move(spec);
  if (windowed) *windowed = std::move(xw);
  return psd;
}

SpectralCache build_spectral_cache(const Eigen::Ref<const Eigen::VectorXd>& x, double fs, const EngineConfig& cfg,
                                   Diagnostics* diag) {
  SpectralCache c;
  c.sampling_rate = fs;
  const Index n = x.size();

  c.psd = periodogram(x, fs, &c.spectrum, &c.windowed);
  g_full_window_ffts.fetch_add(1, std::memory_order_relaxed);
  c.df = fs / static_cast<double>(n);
  c.freqs = bin_frequencies(c.psd.size(), c.df);

  Index frame = cfg.stft_frame_len;
  if (frame > n) {
    note(diag, "STFT frame of " + std::to_string(frame) + " samples clamped to window length " + std::to_string(n));
    frame = n;
  }
  const Index hop = std::max<Index>(1, static_cast<Index>(std::llround(static_cast<double>(frame) * (1.0 - cfg.stft_overlap))));
  const Index frames = (n - frame) / hop + 1;
  c.stft_df = fs / static_cast<double>(frame);
  c.stft_psd.resize(frame / 2 + 1, frames);
  for (Index f = 0; f < frames; ++f) c.stft_psd.col(f) = periodogram(x.segment(f * hop, frame), fs);
  c.stft_freqs = bin_frequencies(c.stft_psd.rows(), c.stft_df);

  c.dwt = wavedec(x, cfg.wavelet_levels, db4<double>());
  return c;
}

std::uint64_t full_window_fft_count() noexcept { return g_full_window_ffts.load(std::memory_order_relaxed); }

double band_power(const Eigen::Ref<const Eigen::VectorXd>& psd, const Eigen::Ref<const Eigen::VectorXd>& freqs,
                  double df, double lo, double hi) {
  double s = 0.0;
  for (Index k = 0; k < psd.size(); ++k)
    if (in_band(freqs[k], lo, hi)) s += psd[k];
  return s * df;
}

BandStats band_stats(const Eigen::Ref<const Eigen::VectorXd>& psd, const Eigen::Ref<const Eigen::VectorXd>& freqs,
                     double df, double lo, double hi) {
  BandStats st;
  Index first = -1, last = -1;
  for (Index k = 0; k < psd.size(); ++k) {
    if (in_band(freqs[k], lo, hi)) {
      if (first < 0) first = k;
      last = k;
    }
  }
  if (first < 0) return st;
  const auto p = psd.segment(first, last - first + 1);
  const auto f = freqs.segment(first, last - first + 1);
  st.bins = p.size();
  const double sum = p.sum();
  if (!(sum > 0.0)) return st;
  st.degenerate = false;
  st.total_power = sum * df;
  st.mean_power_freq = f.dot(p) / sum;
  const Eigen::VectorXd amp = p.cwiseSqrt();
  st.mean_amplitude_freq = f.dot(amp) / amp.sum();

  const double half = sum / 2.0;
  double cum = 0.0;
  for (Index j = 0; j < p.size(); ++j) {
    const double prev = cum;
    cum += p[j];
    if (cum >= half) {
      st.median_freq = j == 0 ? f[0] : f[j - 1] + (half - prev) / p[j] * df;
      break;
    }
  }
  Index peak = 0;
  p.maxCoeff(&peak);
  st.peak_freq = f[peak];

  if (st.bins > 1) {
    double h = 0.0;
    for (Index j = 0; j < p.size(); ++j) {
      const double q = p[j] / sum;
      if (q > 0.0) h -= q * std::log(q);
    }
    st.spectral_entropy = h / std::log(static_cast<double>(st.bins));
  }
  st.inv_moment_ratio = p.cwiseQuotient(f).sum() / f.cwiseAbs2().dot(p);
  return st;
}

}  // namespace semg
