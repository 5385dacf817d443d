#include "semg/engine.hpp"
#include "semg/nonlinear.hpp"
#include "semg/time_domain.hpp"

#include <cmath>

namespace semg {
namespace {

using enum FeatureId;

double waveform_length(const Eigen::VectorXd& x) {
  const Index n = x.size();
  return n < 2 ? 0.0 : (x.tail(n - 1) - x.head(n - 1)).cwiseAbs().sum();
}

// ratio with the degenerate-value policy applied
void set_ratio(FeatureVector& out, FeatureId id, double num, double den) {
  if (!(den > 0.0))
    out.set(id, 0.0, true);
  else
    out.set(id, num / den);
}

}  // namespace

void compute_time_features(const Eigen::Ref<const Eigen::VectorXd>& x, double fs, const EngineConfig& cfg,
                           FeatureVector& out) {
  if (x.size() < 2) throw UsageError("time-domain features need at least 2 samples");
  const bool zero = x.cwiseAbs().maxCoeff() == 0.0;
  const auto smoothing = static_cast<Index>(std::llround(cfg.aemg_smoothing_s * fs));
  const double wa_threshold = cfg.wa_threshold_fraction * x.cwiseAbs().maxCoeff();

  out.set(AEMG, averaged_emg(x, smoothing), zero);
  out.set(iEMG, integrated_emg(x), zero);
  out.set(RMS, root_mean_square(x), zero);
  out.set(MAV, mean_absolute_value(x), zero);
  out.set(MCV, mean_consecutive_variation(x), zero);
  out.set(DASDV, dasdv(x), zero);
  out.set(ZC, static_cast<double>(zero_crossings(x, cfg.zc_threshold)), zero);
  out.set(SSC, static_cast<double>(slope_sign_changes(x, cfg.ssc_threshold)), zero);
  out.set(WA, static_cast<double>(willison_amplitude(x, wa_threshold)), zero);
}

void compute_time_features(const WindowView& window, const EngineConfig& cfg, FeatureVector& out) {
  compute_time_features(window.samples(), window.sampling_rate(), cfg, out);
}

void compute_frequency_features(const SpectralCache& cache, const EngineConfig& cfg, FeatureVector& out) {
  const BandStats st = band_stats(cache.psd, cache.freqs, cache.df, cfg.band_low, cfg.band_high);
  const bool deg = st.degenerate;
  out.set(TP, st.total_power, deg);
  out.set(MPF, st.mean_power_freq, deg);
  out.set(MF, st.mean_amplitude_freq, deg);
  out.set(MDF, st.median_freq, deg);
  out.set(BSE, st.spectral_entropy, deg);
  out.set(FSM2, st.inv_moment_ratio, deg);
  out.set(PKF, st.peak_freq, deg);

  // power strictly between DC and band_low
  double below = 0.0;
  for (Index k = 1; k < cache.psd.size() && cache.freqs[k] < cfg.band_low - 1e-9; ++k) below += cache.psd[k];
  below *= cache.df;
  if (deg)
    out.set(SMR, 0.0, true);
  else
    set_ratio(out, SMR, st.total_power, below);

  double mpf_sum = 0.0, mdf_sum = 0.0;
  Index valid = 0;
  for (Index f = 0; f < cache.stft_psd.cols(); ++f) {
    const BandStats fr = band_stats(cache.stft_psd.col(f), cache.stft_freqs, cache.stft_df, cfg.band_low, cfg.band_high);
    if (fr.degenerate) continue;
    mpf_sum += fr.mean_power_freq;
    mdf_sum += fr.median_freq;
    ++valid;
  }
  out.set(IMPF, valid ? mpf_sum / static_cast<double>(valid) : 0.0, valid == 0);
  out.set(IMF, valid ? mdf_sum / static_cast<double>(valid) : 0.0, valid == 0);
}

void compute_tf_features(const SpectralCache& cache, const EngineConfig& cfg, FeatureVector& out) {
  double low = 0.0, high = 0.0, inv_mpf = 0.0, inv_mdf = 0.0;
  Index valid = 0;
  for (Index f = 0; f < cache.stft_psd.cols(); ++f) {
    const auto col = cache.stft_psd.col(f);
    low += band_power(col, cache.stft_freqs, cache.stft_df, cfg.erhl_low_band[0], cfg.erhl_low_band[1]);
    high += band_power(col, cache.stft_freqs, cache.stft_df, cfg.erhl_high_band[0], cfg.erhl_high_band[1]);
    const BandStats fr = band_stats(col, cache.stft_freqs, cache.stft_df, cfg.band_low, cfg.band_high);
    if (fr.degenerate) continue;
    inv_mpf += 1.0 / fr.mean_power_freq;
    inv_mdf += 1.0 / fr.median_freq;
    ++valid;
  }
  set_ratio(out, ERHL, low, high);
  out.set(IMNF, valid ? inv_mpf / static_cast<double>(valid) : 0.0, valid == 0);
  out.set(IMFB, valid ? inv_mdf / static_cast<double>(valid) : 0.0, valid == 0);
}

void compute_wavelet_features(const SpectralCache& cache, const EngineConfig&, FeatureVector& out) {
  const auto& dwt = cache.dwt;
  if (dwt.levels() < 5) {
    for (auto id : {WIRM1551, WIRM1522, WIRE51, WIRW51, WEE}) out.set(id, 0.0, true);
    return;
  }
  auto energy = [&](int level) { return dwt.details[static_cast<std::size_t>(level - 1)].squaredNorm(); };
  auto abs_sum = [&](int level) { return dwt.details[static_cast<std::size_t>(level - 1)].cwiseAbs().sum(); };

  set_ratio(out, WIRE51, energy(5), energy(1));
  set_ratio(out, WIRM1551, abs_sum(5), abs_sum(1));
  set_ratio(out, WIRM1522, std::sqrt(energy(5)), std::sqrt(energy(2)));
  const double wl1 = waveform_length(reconstruct_detail(dwt, 1, db4<double>()));
  const double wl5 = waveform_length(reconstruct_detail(dwt, 5, db4<double>()));
  set_ratio(out, WIRW51, wl5, wl1);

  Eigen::VectorXd e(dwt.levels() + 1);
  for (int l = 1; l <= dwt.levels(); ++l) e[l - 1] = energy(l);
  e[dwt.levels()] = dwt.approx.squaredNorm();
  const double total = e.sum();
  if (!(total > 0.0)) {
    out.set(WEE, 0.0, true);
  } else {
    double h = 0.0;
    for (Index i = 0; i < e.size(); ++i) {
      const double p = e[i] / total;
      if (p > 0.0) h -= p * std::log(p);
    }
    out.set(WEE, h);
  }
}

void compute_nonlinear_features(const Eigen::Ref<const Eigen::VectorXd>& x, const SpectralCache& cache,
                                const EngineConfig& cfg, FeatureVector& out) {
  const double sd = population_std(x);
  const double r = cfg.entropy_r_fraction * sd;
  const auto ent = approximate_and_sample_entropy(x, cfg.entropy_m, r);
  out.set(AE, ent.approximate.value, ent.approximate.degenerate);
  out.set(SE, ent.sample.value, ent.sample.degenerate || !(sd > 0.0));

  const auto det = rqa_determinism(x, cfg.rqa_embedding, cfg.rqa_delay, cfg.rqa_threshold_fraction);
  out.set(DET, det.value, det.degenerate);
  const auto acc = lag1_autocorrelation(x);
  out.set(ACC, acc.value, acc.degenerate);
  out.set(LZC, lempel_ziv_complexity(x));
  const auto fd = higuchi_fd(x, cfg.higuchi_kmax);
  out.set(FD, fd.value, fd.degenerate);
  out.set(BE, permutation_entropy(x, cfg.permutation_order, cfg.permutation_delay));

  double total = cache.dwt.approx.squaredNorm();
  for (const auto& d : cache.dwt.details) total += d.squaredNorm();
  if (!(total > 0.0)) {
    out.set(WENT, 0.0, true);
  } else {
    double h = 0.0;
    auto accumulate = [&](const Eigen::VectorXd& c) {
      for (Index i = 0; i < c.size(); ++i) {
        const double q = c[i] * c[i] / total;
        if (q > 0.0) h -= q * std::log(q);
      }
    };
    for (const auto& d : cache.dwt.details) accumulate(d);
    accumulate(cache.dwt.approx);
    out.set(WENT, h);
  }

  const auto dfa = dfa_exponent(x, cfg.dfa_min_scale, cfg.dfa_max_scale);
  out.set(DFA, dfa.value, dfa.degenerate);
}

void compute_nonlinear_features(const WindowView& window, const SpectralCache& cache, const EngineConfig& cfg,
                                FeatureVector& out) {
  compute_nonlinear_features(window.samples(), cache, cfg, out);
}

FeatureVector compute_window_features(const WindowView& window, const EngineConfig& cfg) {
  FeatureVector fv;
  fv.channel = window.channel_index();
  fv.start_sample = window.start_sample();
  compute_time_features(window, cfg, fv);
  const SpectralCache cache = build_spectral_cache(window, cfg);
  compute_frequency_features(cache, cfg, fv);
  compute_tf_features(cache, cfg, fv);
  compute_wavelet_features(cache, cfg, fv);
  compute_nonlinear_features(window, cache, cfg, fv);
  return fv;
}

}  // namespace semg
