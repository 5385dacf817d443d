#include "semg/synth.hpp"

#include "semg/error.hpp"
#include "semg/filter.hpp"
#include "semg/windowing.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace semg {
namespace {

// Cascade of two constant-peak-gain band-pass biquads with the -3 dB width of
// the pair equal to `bandwidth`.
struct Shaper {
  Biquad<double> s;
  double gain = 1.0;  // makes the steady-state output unit variance for unit white input
};

constexpr double kCascadeWidth = 0.6435942529055827;  // sqrt(sqrt(2) - 1)

Shaper design_shaper(double fc, double bandwidth, double fs) {
  const double q = kCascadeWidth * fc / bandwidth;
  const double w0 = 2.0 * std::numbers::pi * fc / fs;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Shaper sh;
  sh.s.b0 = alpha / a0;
  sh.s.b1 = 0.0;
  sh.s.b2 = -alpha / a0;
  sh.s.a1 = -2.0 * std::cos(w0) / a0;
  sh.s.a2 = (1.0 - alpha) / a0;

  // energy of the cascade impulse response
  double z[4] = {0, 0, 0, 0};
  double energy = 0.0;
  const int taps = static_cast<int>(40.0 * fs / bandwidth) + 64;
  for (int i = 0; i < taps; ++i) {
    double v = i == 0 ? 1.0 : 0.0;
    for (int k = 0; k < 2; ++k) {
      const double out = sh.s.b0 * v + z[2 * k];
      z[2 * k] = sh.s.b1 * v - sh.s.a1 * out + z[2 * k + 1];
      z[2 * k + 1] = sh.s.b2 * v - sh.s.a2 * out;
      v = out;
    }
    energy += v * v;
  }
  sh.gain = 1.0 / std::sqrt(energy);
  return sh;
}

Shaper lerp(const Shaper& a, const Shaper& b, double u) {
  Shaper r;
  r.s.b0 = a.s.b0 + u * (b.s.b0 - a.s.b0);
  r.s.b1 = 0.0;
  r.s.b2 = a.s.b2 + u * (b.s.b2 - a.s.b2);
  r.s.a1 = a.s.a1 + u * (b.s.a1 - a.s.a1);
  r.s.a2 = a.s.a2 + u * (b.s.a2 - a.s.a2);
  r.gain = a.gain + u * (b.gain - a.gain);
  return r;
}

}  // namespace

void SynthSpec::validate() const {
  if (!(sampling_rate > 0.0)) throw ConfigError("sampling_rate must be positive");
  if (!(duration_s > 0.0)) throw ConfigError("duration must be positive");
  if (duration_s < 3.0 * window.window_len_s) throw ConfigError("duration must cover at least three windows");
  window.validate(sampling_rate);
  if (!(base_amplitude > 0.0)) throw ConfigError("base amplitude must be positive");
  if (!(amplitude_growth > -1.0)) throw ConfigError("amplitude growth must exceed -1");
  if (!(freq_compression >= 0.0 && freq_compression < 1.0)) throw ConfigError("frequency compression must lie in [0, 1)");
  if (!(center_freq * (1.0 - freq_compression) > band_low))
    throw ConfigError("final centre frequency must stay above the band's lower edge");
  if (!(bandwidth > 0.0)) throw ConfigError("bandwidth must be positive");
  if (!(center_freq + bandwidth < sampling_rate / 2.0)) throw ConfigError("shaped band must stay below Nyquist");
  if (!(noise_floor >= 0.0)) throw ConfigError("noise floor must be non-negative");
  if (channels.empty()) throw ConfigError("at least one channel is required");
  if (!(block_s > 0.0)) throw ConfigError("block length must be positive");
}

int synth_rpe_at(const SynthSpec& spec, double t_s) {
  const double u = std::clamp(t_s / spec.duration_s, 0.0, 1.0);
  if (spec.label_policy == LabelPolicy::RpeRamp) return 6 + static_cast<int>(std::lround(14.0 * u));
  return u < 1.0 / 3.0 ? 8 : u < 2.0 / 3.0 ? 13 : 18;
}

SynthOutput generate(const SynthSpec& spec) {
  spec.validate();
  const double fs = spec.sampling_rate;
  const auto n = static_cast<Index>(std::llround(spec.duration_s * fs));
  const double total = static_cast<double>(n) / fs;

  SynthOutput out;
  out.amplitude.resize(n);
  out.center_freq.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / fs / total;
    out.amplitude[i] = spec.base_amplitude * (1.0 + spec.amplitude_growth * u);
    out.center_freq[i] = spec.center_freq * (1.0 - spec.freq_compression * u);
  }

  const auto block = std::max<Index>(1, static_cast<Index>(std::llround(spec.block_s * fs)));
  const Index blocks = (n + block - 1) / block;
  std::vector<Shaper> knots;
  knots.reserve(static_cast<std::size_t>(blocks + 1));
  for (Index b = 0; b <= blocks; ++b) {
    const double u = std::min(1.0, static_cast<double>(b * block) / fs / total);
    // compression scales the whole band, width included
    const double scale = 1.0 - spec.freq_compression * u;
    knots.push_back(design_shaper(spec.center_freq * scale, spec.bandwidth * scale, fs));
  }

  SignalRecord& sig = out.signal;
  sig.sampling_rate = fs;
  sig.channels = spec.channels;
  sig.samples.resize(n, static_cast<Index>(spec.channels.size()));

  for (Index c = 0; c < sig.channel_count(); ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double z[4] = {0, 0, 0, 0};
    auto step = [&](const Shaper& sh, double v) {
      for (int k = 0; k < 2; ++k) {
        const double o = sh.s.b0 * v + z[2 * k];
        z[2 * k] = sh.s.b1 * v - sh.s.a1 * o + z[2 * k + 1];
        z[2 * k + 1] = sh.s.b2 * v - sh.s.a2 * o;
        v = o;
      }
      return v * sh.gain;
    };
    // settle the shaping filter before the record starts
    const auto warmup = static_cast<Index>(std::llround(0.25 * fs));
    for (Index i = 0; i < warmup; ++i) step(knots.front(), gauss(rng));
    for (Index i = 0; i < n; ++i) {
      const Index b = i / block;
      const double u = static_cast<double>(i - b * block) / static_cast<double>(block);
      const double shaped = step(lerp(knots[static_cast<std::size_t>(b)], knots[static_cast<std::size_t>(b + 1)], u), gauss(rng));
      const double floor = spec.noise_floor * spec.base_amplitude * gauss(rng);
      sig.samples(i, c) = out.amplitude[i] * shaped + floor;
    }
  }

  for (Index s = 0; static_cast<double>(s) <= total; ++s)
    sig.rpe_marks.push_back({static_cast<double>(s), synth_rpe_at(spec, static_cast<double>(s))});

  const Index len = spec.window.window_len(fs);
  const Index stride = spec.window.stride(fs);
  const Index windows = window_count(n, len, stride);
  out.labels.reserve(static_cast<std::size_t>(windows));
  for (Index w = 0; w < windows; ++w)
    out.labels.push_back(FatigueLabel::from_rpe(synth_rpe_at(spec, static_cast<double>(w * stride) / fs)));
  return out;
}

}  // namespace semg
