#include "semg/filter.hpp"

#include "semg/error.hpp"

#include <cmath>
#include <numbers>

namespace semg {
namespace {

using Section = Biquad<double>;

enum class Pass { Low, High };

Section rbj_section(Pass pass, double cutoff, double q, double fs) {
  const double w0 = 2.0 * std::numbers::pi * cutoff / fs;
  const double c = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Section s;
  if (pass == Pass::Low) {
    s.b0 = (1.0 - c) / 2.0 / a0;
    s.b1 = (1.0 - c) / a0;
    s.b2 = s.b0;
  } else {
    s.b0 = (1.0 + c) / 2.0 / a0;
    s.b1 = -(1.0 + c) / a0;
    s.b2 = s.b0;
  }
  s.a1 = -2.0 * c / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

Section first_order_section(Pass pass, double cutoff, double fs) {
  const double k = std::tan(std::numbers::pi * cutoff / fs);
  Section s;
  s.a1 = (k - 1.0) / (k + 1.0);
  if (pass == Pass::Low) {
    s.b0 = s.b1 = k / (1.0 + k);
  } else {
    s.b0 = 1.0 / (1.0 + k);
    s.b1 = -s.b0;
  }
  return s;
}

void append_butterworth(std::vector<Section>& out, Pass pass, int order, double cutoff, double fs) {
  // pole-pair angles from the negative real axis
  for (int k = 1; k <= order / 2; ++k) {
    const double theta = (order % 2 == 0 ? 2.0 * k - 1.0 : 2.0 * k) * std::numbers::pi / (2.0 * order);
    out.push_back(rbj_section(pass, cutoff, 1.0 / (2.0 * std::cos(theta)), fs));
  }
  if (order % 2 == 1) out.push_back(first_order_section(pass, cutoff, fs));
}

Section notch_section(double f0, double bandwidth, double fs) {
  const double w0 = 2.0 * std::numbers::pi * f0 / fs;
  const double c = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * (f0 / bandwidth));
  const double a0 = 1.0 + alpha;
  Section s;
  s.b0 = 1.0 / a0;
  s.b1 = -2.0 * c / a0;
  s.b2 = s.b0;
  s.a1 = s.b1;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

void run_in_place(const FilterChain& chain, Eigen::Ref<Eigen::VectorXd> x) {
  for (const auto& s : chain.sections) {
    double z1 = 0.0, z2 = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const double in = x[i];
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      x[i] = out;
    }
  }
}

}  // namespace

int FilterChain::order() const {
  int n = 0;
  for (const auto& s : sections) n += s.order();
  return n;
}

std::complex<double> FilterChain::response(double hz) const {
  const double omega = 2.0 * std::numbers::pi * hz / sampling_rate;
  std::complex<double> h{1.0, 0.0};
  for (const auto& s : sections) h *= s.response(omega);
  return h;
}

double FilterChain::magnitude_db(double hz) const { return 20.0 * std::log10(std::abs(response(hz))); }

double FilterChain::max_pole_radius() const {
  double r = 0.0;
  for (const auto& s : sections) r = std::max(r, s.pole_radius());
  return r;
}

FilterChain design_filters(const FilterSpec& spec, double fs) {
  if (!(fs > 0.0)) throw ConfigError("sampling_rate must be positive");
  spec.validate(fs);
  FilterChain chain;
  chain.sampling_rate = fs;
  append_butterworth(chain.sections, Pass::High, spec.filter_order, spec.band_low, fs);
  append_butterworth(chain.sections, Pass::Low, spec.filter_order, spec.band_high, fs);
  if (spec.notch_enabled) chain.sections.push_back(notch_section(spec.notch_freq, spec.notch_bandwidth, fs));

  for (const auto& s : chain.sections) {
    const double r = s.pole_radius();
    if (!std::isfinite(r) || r >= 1.0 - 1e-12)
      throw DesignError("filter design is unstable (pole radius " + std::to_string(r) + ")");
  }
  return chain;
}

Eigen::VectorXd filter_sequence(const FilterChain& chain, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd y = x;
  run_in_place(chain, y);
  return y;
}

Eigen::VectorXd filter_sequence_zero_phase(const FilterChain& chain, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Index n = x.size();
  if (n < 2) return filter_sequence(chain, x);
  const Index pad = std::min<Index>(3 * chain.order(), n - 1);
  Eigen::VectorXd ext(n + 2 * pad);
  for (Index k = 0; k < pad; ++k) {
    ext[k] = x[pad - k];
    ext[pad + n + k] = x[n - 2 - k];
  }
  ext.segment(pad, n) = x;
  run_in_place(chain, ext);
  ext.reverseInPlace();
  run_in_place(chain, ext);
  ext.reverseInPlace();
  return ext.segment(pad, n);
}

SignalRecord apply_filters(const FilterChain& chain, const SignalRecord& signal, PhaseMode mode) {
  if (std::abs(chain.sampling_rate - signal.sampling_rate) > 1e-9 * signal.sampling_rate)
    throw UsageError("filter chain designed for " + std::to_string(chain.sampling_rate) + " Hz applied to " +
                     std::to_string(signal.sampling_rate) + " Hz signal");
  SignalRecord out = signal;
  for (Index c = 0; c < signal.channel_count(); ++c) {
    out.samples.col(c) = mode == PhaseMode::Causal ? filter_sequence(chain, signal.samples.col(c))
                                                   : filter_sequence_zero_phase(chain, signal.samples.col(c));
  }
  return out;
}

}  // namespace semg
