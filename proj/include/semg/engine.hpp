#pragma once

#include "semg/error.hpp"
#include "semg/features.hpp"
#include "semg/spectral.hpp"
#include "semg/windowing.hpp"

#include <span>
#include <string>
#include <vector>

namespace semg {

// Descriptor families. Each fills its own slots of `out` and leaves the rest.

/// AEMG, iEMG, RMS, MAV, MCV, DASDV, ZC, SSC, WA.
void compute_time_features(const WindowView& window, const EngineConfig& cfg, FeatureVector& out);
void compute_time_features(const Eigen::Ref<const Eigen::VectorXd>& x, double fs, const EngineConfig& cfg,
                           FeatureVector& out);

/// SMR, FSM2, TP, MPF, MF, MDF, IMPF, IMF, BSE and auxiliary PKF.
void compute_frequency_features(const SpectralCache& cache, const EngineConfig& cfg, FeatureVector& out);

/// ERHL, IMNF, IMFB from the STFT frames.
void compute_tf_features(const SpectralCache& cache, const EngineConfig& cfg, FeatureVector& out);

/// WIRM1551, WIRM1522, WIRE51, WIRW51, WEE.
void compute_wavelet_features(const SpectralCache& cache, const EngineConfig& cfg, FeatureVector& out);

/// DET, ACC, AE, SE, LZC, FD, BE, WENT and auxiliary DFA.
void compute_nonlinear_features(const WindowView& window, const SpectralCache& cache, const EngineConfig& cfg,
                                FeatureVector& out);
void compute_nonlinear_features(const Eigen::Ref<const Eigen::VectorXd>& x, const SpectralCache& cache,
                                const EngineConfig& cfg, FeatureVector& out);

/// All five families over one window, sharing a single spectral cache.
FeatureVector compute_window_features(const WindowView& window, const EngineConfig& cfg);

/// One FeatureVector per (channel, window), channel-major. Work items are
/// split statically across threads and written to preallocated slots, so the
/// result is bit-identical for every thread count.
FeatureMatrix extract_features(const SignalRecord& signal, const WindowPlan& plan, const EngineConfig& cfg,
                               Diagnostics* diag = nullptr);

/// FNV-1a over the bit patterns of every value and quality mask.
std::uint64_t checksum(const FeatureMatrix& m);

/// True when values and quality masks are bit-identical.
bool bit_identical(const FeatureMatrix& a, const FeatureMatrix& b);

struct BenchmarkRow {
  unsigned threads = 1;
  std::vector<double> seconds;  // one per repeat
  double best_seconds = 0.0;
  double windows_per_sec = 0.0;
  double speedup = 1.0;         // vs the first (baseline) thread count
  double spread = 0.0;          // (max - min) / min across repeats
  bool unstable = false;        // spread > 20%
};

struct BenchmarkReport {
  Index windows = 0;            // work items (channel x window)
  std::uint64_t checksum = 0;
  unsigned hardware_threads = 0;
  std::string cpu_model;
  std::vector<BenchmarkRow> rows;

  std::string to_text() const;
  std::string to_key_values() const;
};

/// Times extract_features for each thread count. thread_counts[0] is the
/// speedup baseline. Outputs are compared across thread counts before any
/// timing; a mismatch throws std::runtime_error.
BenchmarkReport benchmark_engine(const SignalRecord& signal, const WindowPlan& plan, const EngineConfig& cfg,
                                 std::span<const unsigned> thread_counts, int repeats = 3);

}  // namespace semg
