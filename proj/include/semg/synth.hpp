#pragma once

#include "semg/signal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace semg {

enum class LabelPolicy { Thirds, RpeRamp };

/// Synthetic fatiguing contraction: band-limited Gaussian noise whose
/// amplitude grows by `amplitude_growth` and whose centre frequency drops by
/// `freq_compression` (both as fractions over the full duration).
struct SynthSpec {
  double duration_s = 60.0;
  double sampling_rate = 2000.0;
  double base_amplitude = 1.0;
  double amplitude_growth = 0.5;
  double center_freq = 120.0;
  double freq_compression = 0.4;
  double bandwidth = 60.0;  // at t = 0; shrinks with the centre under compression
  double noise_floor = 0.05;  // white-noise std as a fraction of base_amplitude
  std::uint64_t seed = 1;
  LabelPolicy label_policy = LabelPolicy::Thirds;
  WindowPlan window;
  double band_low = 20.0;
  std::vector<std::string> channels{"biceps", "triceps"};
  double block_s = 0.05;  // coefficient update period of the shaping filter

  void validate() const;
};

struct SynthOutput {
  SignalRecord signal;
  std::vector<FatigueLabel> labels;  // one per window start
  Eigen::VectorXd amplitude;         // a(t) per sample
  Eigen::VectorXd center_freq;       // f_c(t) per sample
};

SynthOutput generate(const SynthSpec& spec);

/// RPE at time t under the policy: Thirds uses 8 / 13 / 18, RpeRamp goes
/// linearly from 6 to 20.
int synth_rpe_at(const SynthSpec& spec, double t_s);

}  // namespace semg
