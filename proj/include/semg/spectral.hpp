#pragma once

#include "semg/error.hpp"
#include "semg/features.hpp"
#include "semg/wavelet.hpp"
#include "semg/windowing.hpp"

#include <cstdint>

namespace semg {

/// Intermediate spectral representations of one window, shared by every
/// frequency, time-frequency and wavelet descriptor.
struct SpectralCache {
  double sampling_rate = 0.0;
  Eigen::VectorXd windowed;        // Hann-tapered samples
  Eigen::VectorXcd spectrum;       // one-sided FFT of `windowed`, N/2 + 1 bins
  Eigen::VectorXd psd;             // one-sided density, units^2 / Hz
  Eigen::VectorXd freqs;           // Hz
  double df = 0.0;                 // bin width, Hz

  Eigen::MatrixXd stft_psd;        // bins x frames
  Eigen::VectorXd stft_freqs;
  double stft_df = 0.0;

  WaveletDecomposition<double> dwt;
};

/// Periodic Hann taper, w[n] = 0.5 (1 - cos(2 pi n / N)).
Eigen::VectorXd hann_window(Index n);

/// One-sided density periodogram: P[k] = c |X[k]|^2 / (fs sum w^2), c = 2
/// except at DC and Nyquist, so sum P df = sum (w x)^2 / sum w^2.
Eigen::VectorXd periodogram(const Eigen::Ref<const Eigen::VectorXd>& x, double fs, Eigen::VectorXcd* spectrum = nullptr,
                            Eigen::VectorXd* windowed = nullptr);

SpectralCache build_spectral_cache(const Eigen::Ref<const Eigen::VectorXd>& x, double fs, const EngineConfig& cfg,
                                   Diagnostics* diag = nullptr);

inline SpectralCache build_spectral_cache(const WindowView& window, const EngineConfig& cfg,
                                          Diagnostics* diag = nullptr) {
  return build_spectral_cache(window.samples(), window.sampling_rate(), cfg, diag);
}

/// Process-wide count of full-window FFTs executed by build_spectral_cache.
std::uint64_t full_window_fft_count() noexcept;

/// Summary statistics of a PSD restricted to [lo, hi] Hz.
struct BandStats {
  double total_power = 0.0;   // sum P df
  double mean_power_freq = 0.0;
  double mean_amplitude_freq = 0.0;
  double median_freq = 0.0;
  double peak_freq = 0.0;
  double spectral_entropy = 0.0;  // normalized by ln(bins)
  double inv_moment_ratio = 0.0;  // sum f^-1 P / sum f^2 P
  Index bins = 0;
  bool degenerate = true;     // no power in band
};

BandStats band_stats(const Eigen::Ref<const Eigen::VectorXd>& psd, const Eigen::Ref<const Eigen::VectorXd>& freqs,
                     double df, double lo, double hi);

/// sum P df over lo <= f <= hi.
double band_power(const Eigen::Ref<const Eigen::VectorXd>& psd, const Eigen::Ref<const Eigen::VectorXd>& freqs,
                  double df, double lo, double hi);

}  // namespace semg
