#pragma once

#include "semg/signal.hpp"

#include <complex>
#include <vector>

namespace semg {

/// Second-order section, a0 normalized to 1. First-order sections keep b2 = a2 = 0.
template <typename Scalar>
struct Biquad {
  Scalar b0{1}, b1{0}, b2{0};
  Scalar a1{0}, a2{0};

  /// Frequency response at normalized angular frequency omega (rad/sample).
  std::complex<Scalar> response(Scalar omega) const {
    const std::complex<Scalar> z1 = std::polar(Scalar(1), -omega);
    const std::complex<Scalar> z2 = z1 * z1;
    return (b0 + b1 * z1 + b2 * z2) / (Scalar(1) + a1 * z1 + a2 * z2);
  }

  /// Largest pole magnitude.
  Scalar pole_radius() const {
    // z^2 + a1 z + a2 = 0
    const std::complex<Scalar> disc = std::sqrt(std::complex<Scalar>(a1 * a1 - Scalar(4) * a2));
    const Scalar r1 = std::abs((-a1 + disc) / Scalar(2));
    const Scalar r2 = std::abs((-a1 - disc) / Scalar(2));
    return std::max(r1, r2);
  }

  int order() const { return (a2 != Scalar(0) || b2 != Scalar(0)) ? 2 : 1; }
};

/// Cascade of biquads: Butterworth high-pass + Butterworth low-pass (together
/// a maximally flat band-pass) followed by an optional notch.
struct FilterChain {
  std::vector<Biquad<double>> sections;
  double sampling_rate = 0.0;

  int order() const;
  std::complex<double> response(double hz) const;
  double magnitude_db(double hz) const;
  double max_pole_radius() const;
};

enum class PhaseMode { Causal, ZeroPhase };

/// Butterworth high/low-pass sections of `spec.filter_order` each plus an RBJ
/// notch with Q = notch_freq / notch_bandwidth.
FilterChain design_filters(const FilterSpec& spec, double sampling_rate);

/// Causal single pass (direct form II transposed) over one sequence.
Eigen::VectorXd filter_sequence(const FilterChain& chain, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Forward-backward pass with reflect padding of 3x the chain order.
Eigen::VectorXd filter_sequence_zero_phase(const FilterChain& chain, const Eigen::Ref<const Eigen::VectorXd>& x);

SignalRecord apply_filters(const FilterChain& chain, const SignalRecord& signal,
                           PhaseMode mode = PhaseMode::Causal);

}  // namespace semg
