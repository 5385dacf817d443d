#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace semg {

using Index = Eigen::Index;

/// Self-reported exertion at a point in the recording.
struct RpeMark {
  double time_s = 0.0;
  int rpe = 6;
};

/// Multi-channel sEMG recording. Samples are stored column-per-channel so
/// each channel is contiguous in memory.
struct SignalRecord {
  Eigen::MatrixXd samples;  // length() x channel_count()
  double sampling_rate = 2000.0;
  std::vector<std::string> channels;
  std::optional<int> mvc_level;
  std::optional<std::string> subject_id;
  std::vector<RpeMark> rpe_marks;

  Index length() const noexcept { return samples.rows(); }
  Index channel_count() const noexcept { return samples.cols(); }
  double duration_s() const noexcept { return static_cast<double>(length()) / sampling_rate; }

  /// Throws ConfigError/DataError when the record invariants do not hold.
  void validate() const;
};

enum class FatigueState { Relaxed = 0, Exerted = 1, Fatigued = 2 };

const char* to_string(FatigueState s) noexcept;
std::optional<FatigueState> fatigue_state_from_string(const std::string& s);

/// Borg RPE score with its derived three-level state.
/// 6-10 Relaxed, 11-15 Exerted, 16-20 Fatigued.
struct FatigueLabel {
  int rpe = 6;
  FatigueState state = FatigueState::Relaxed;

  static FatigueLabel from_rpe(int rpe);
  friend bool operator==(const FatigueLabel&, const FatigueLabel&) = default;
};

struct FilterSpec {
  double band_low = 20.0;
  double band_high = 450.0;
  int filter_order = 4;
  bool notch_enabled = true;
  double notch_freq = 50.0;
  double notch_bandwidth = 2.0;

  void validate(double sampling_rate) const;
};

/// Sliding-window plan in seconds; sample counts are derived per sampling rate.
struct WindowPlan {
  double window_len_s = 0.5;
  double stride_s = 0.25;

  Index window_len(double sampling_rate) const;
  Index stride(double sampling_rate) const;
  void validate(double sampling_rate) const;
};

}  // namespace semg
