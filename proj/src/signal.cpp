#include "semg/signal.hpp"

#include "semg/error.hpp"

#include <cmath>

namespace semg {

void SignalRecord::validate() const {
  if (!(sampling_rate > 0.0) || !std::isfinite(sampling_rate))
    throw ConfigError("sampling_rate must be positive");
  if (samples.rows() < 1) throw DataError("no samples");
  if (samples.cols() < 1) throw DataError("no channels");
  if (static_cast<Index>(channels.size()) != samples.cols())
    throw DataError("channel label count does not match sample columns");
  if (mvc_level && (*mvc_level <= 0 || *mvc_level > 100)) throw ConfigError("mvc_level must be a percentage in (0, 100]");
}

const char* to_string(FatigueState s) noexcept {
  switch (s) {
    case FatigueState::Relaxed: return "Relaxed";
    case FatigueState::Exerted: return "Exerted";
    case FatigueState::Fatigued: return "Fatigued";
  }
  return "?";
}

std::optional<FatigueState> fatigue_state_from_string(const std::string& s) {
  if (s == "Relaxed") return FatigueState::Relaxed;
  if (s == "Exerted") return FatigueState::Exerted;
  if (s == "Fatigued") return FatigueState::Fatigued;
  return std::nullopt;
}

FatigueLabel FatigueLabel::from_rpe(int rpe) {
  if (rpe < 6 || rpe > 20) throw DataError("RPE " + std::to_string(rpe) + " outside 6..20");
  FatigueState s = rpe <= 10 ? FatigueState::Relaxed : rpe <= 15 ? FatigueState::Exerted : FatigueState::Fatigued;
  return {rpe, s};
}

void FilterSpec::validate(double fs) const {
  const double nyq = fs / 2.0;
  if (!(band_low > 0.0 && band_low < band_high && band_high < nyq))
    throw ConfigError("band edges must satisfy 0 < low < high < fs/2");
  if (filter_order < 1) throw ConfigError("filter_order must be positive");
  if (notch_enabled) {
    if (!(notch_freq > 0.0 && notch_freq < nyq)) throw ConfigError("notch frequency must lie in (0, fs/2)");
    if (!(notch_bandwidth > 0.0)) throw ConfigError("notch bandwidth must be positive");
  }
}

Index WindowPlan::window_len(double fs) const { return static_cast<Index>(std::llround(window_len_s * fs)); }
Index WindowPlan::stride(double fs) const { return static_cast<Index>(std::llround(stride_s * fs)); }

void WindowPlan::validate(double fs) const {
  if (!(fs > 0.0)) throw ConfigError("sampling_rate must be positive");
  const Index len = window_len(fs);
  const Index st = stride(fs);
  if (len < 2) throw ConfigError("window must span at least 2 samples");
  if (st < 1) throw ConfigError("stride must be at least 1 sample");
  if (st > len) throw ConfigError("stride must not exceed the window length");
}

}  // namespace semg
