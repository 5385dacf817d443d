#pragma once

#include "semg/signal.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semg {

/// Canonical descriptor order (featmap_v1). The first 34 entries carry a
/// fixed increasing/decreasing group; PKF and DFA are auxiliary.
enum class FeatureId : std::uint8_t {
  AEMG, iEMG, RMS, MAV, MCV, DASDV, ZC, SSC, WA,
  SMR, FSM2, TP, MPF, MF, MDF, IMPF, IMF, BSE,
  ERHL, IMNF, IMFB,
  WIRM1551, WIRM1522, WIRE51, WIRW51, WEE,
  DET, ACC, AE, SE, LZC, FD, BE, WENT,
  PKF, DFA,
};

inline constexpr std::size_t kFeatureCount = 36;
inline constexpr std::size_t kGroupedFeatureCount = 34;
inline constexpr std::string_view kFeatmapVersion = "featmap_v1";

enum class Domain { Time, Frequency, TimeFrequency, Wavelet, Nonlinear, Auxiliary };
enum class TableGroup { Increasing, Decreasing, Auxiliary };

struct FeatureInfo {
  FeatureId id;
  std::string_view name;
  Domain domain;
  TableGroup table_group;
};

const std::array<FeatureInfo, kFeatureCount>& feature_table();
constexpr std::size_t index_of(FeatureId id) noexcept { return static_cast<std::size_t>(id); }
constexpr FeatureId feature_at(std::size_t i) noexcept { return static_cast<FeatureId>(i); }
std::string_view feature_name(FeatureId id);
std::optional<FeatureId> feature_from_name(std::string_view name);
bool is_grouped(FeatureId id) noexcept;

using FeatureValues = Eigen::Matrix<double, kFeatureCount, 1>;

/// Descriptor values of one (channel, window). Non-finite values are never
/// stored: they become 0 with the degenerate bit set.
struct FeatureVector {
  Index window_index = 0;
  Index channel = 0;
  Index start_sample = 0;
  FeatureValues values = FeatureValues::Zero();
  std::uint64_t quality = 0;  // bit i set => feature i degenerate

  double operator[](FeatureId id) const { return values[static_cast<Index>(index_of(id))]; }
  void set(FeatureId id, double v, bool degenerate = false);
  bool degenerate(FeatureId id) const noexcept { return (quality >> index_of(id)) & 1u; }
};

/// Rows ordered channel-major, then by window index.
struct FeatureMatrix {
  std::vector<std::string> channel_names;
  Index windows_per_channel = 0;
  std::vector<FeatureVector> rows;

  Index channel_count() const noexcept { return static_cast<Index>(channel_names.size()); }
  const FeatureVector& at(Index channel, Index window) const {
    return rows[static_cast<std::size_t>(channel * windows_per_channel + window)];
  }
  /// Trajectory of one feature over windows of one channel.
  Eigen::VectorXd trajectory(FeatureId id, Index channel) const;
};

/// Parameters the descriptor definitions leave open.
struct EngineConfig {
  double zc_threshold = 0.0;
  double ssc_threshold = 0.0;
  double wa_threshold_fraction = 0.05;  // of window peak |x|
  double aemg_smoothing_s = 0.05;

  double band_low = 20.0;
  double band_high = 450.0;
  double erhl_low_band[2] = {20.0, 80.0};
  double erhl_high_band[2] = {150.0, 450.0};

  Index stft_frame_len = 128;
  double stft_overlap = 0.5;

  int wavelet_levels = 5;

  int rqa_embedding = 3;
  int rqa_delay = 2;
  double rqa_threshold_fraction = 0.10;

  int entropy_m = 2;
  double entropy_r_fraction = 0.2;

  int higuchi_kmax = 8;
  int permutation_order = 3;
  int permutation_delay = 1;
  Index dfa_min_scale = 4;
  Index dfa_max_scale = 64;

  unsigned thread_count = 1;  // 0 => hardware concurrency

  void validate() const;
  unsigned resolved_threads() const;
};

}  // namespace semg
