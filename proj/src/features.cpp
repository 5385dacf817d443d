#include "semg/features.hpp"

#include "semg/error.hpp"

#include <cmath>
#include <thread>

namespace semg {

namespace {
using enum FeatureId;
constexpr auto Inc = TableGroup::Increasing;
constexpr auto Dec = TableGroup::Decreasing;
constexpr auto Aux = TableGroup::Auxiliary;

constexpr std::array<FeatureInfo, kFeatureCount> kTable{{
    {AEMG, "AEMG", Domain::Time, Inc},
    {iEMG, "iEMG", Domain::Time, Inc},
    {RMS, "RMS", Domain::Time, Inc},
    {MAV, "MAV", Domain::Time, Inc},
    {MCV, "MCV", Domain::Time, Inc},
    {DASDV, "DASDV", Domain::Time, Inc},
    {ZC, "ZC", Domain::Time, Dec},
    {SSC, "SSC", Domain::Time, Dec},
    {WA, "WA", Domain::Time, Dec},
    {SMR, "SMR", Domain::Frequency, Inc},
    {FSM2, "FSM2", Domain::Frequency, Inc},
    {TP, "TP", Domain::Frequency, Inc},
    {MPF, "MPF", Domain::Frequency, Dec},
    {MF, "MF", Domain::Frequency, Dec},
    {MDF, "MDF", Domain::Frequency, Dec},
    {IMPF, "IMPF", Domain::Frequency, Dec},
    {IMF, "IMF", Domain::Frequency, Dec},
    {BSE, "BSE", Domain::Frequency, Dec},
    {ERHL, "ERHL", Domain::TimeFrequency, Inc},
    {IMNF, "IMNF", Domain::TimeFrequency, Inc},
    {IMFB, "IMFB", Domain::TimeFrequency, Inc},
    {WIRM1551, "WIRM1551", Domain::Wavelet, Inc},
    {WIRM1522, "WIRM1522", Domain::Wavelet, Inc},
    {WIRE51, "WIRE51", Domain::Wavelet, Inc},
    {WIRW51, "WIRW51", Domain::Wavelet, Inc},
    {WEE, "WEE", Domain::Wavelet, Inc},
    {DET, "DET", Domain::Nonlinear, Inc},
    {ACC, "ACC", Domain::Nonlinear, Inc},
    {AE, "AE", Domain::Nonlinear, Dec},
    {SE, "SE", Domain::Nonlinear, Dec},
    {LZC, "LZC", Domain::Nonlinear, Dec},
    {FD, "FD", Domain::Nonlinear, Dec},
    {BE, "BE", Domain::Nonlinear, Dec},
    {WENT, "WENT", Domain::Nonlinear, Dec},
    {PKF, "PKF", Domain::Auxiliary, Aux},
    {DFA, "DFA", Domain::Auxiliary, Aux},
}};

constexpr bool table_is_canonical() {
  for (std::size_t i = 0; i < kTable.size(); ++i)
    if (index_of(kTable[i].id) != i) return false;
  return true;
}
static_assert(table_is_canonical());
}  // namespace

const std::array<FeatureInfo, kFeatureCount>& feature_table() { return kTable; }

std::string_view feature_name(FeatureId id) { return kTable[index_of(id)].name; }

std::optional<FeatureId> feature_from_name(std::string_view name) {
  for (const auto& f : kTable)
    if (f.name == name) return f.id;
  return std::nullopt;
}

bool is_grouped(FeatureId id) noexcept { return index_of(id) < kGroupedFeatureCount; }

void FeatureVector::set(FeatureId id, double v, bool degenerate) {
  const auto i = index_of(id);
  if (degenerate || !std::isfinite(v)) {
    values[static_cast<Index>(i)] = 0.0;
    quality |= std::uint64_t{1} << i;
  } else {
    values[static_cast<Index>(i)] = v;
    quality &= ~(std::uint64_t{1} << i);
  }
}

Eigen::VectorXd FeatureMatrix::trajectory(FeatureId id, Index channel) const {
  Eigen::VectorXd out(windows_per_channel);
  for (Index w = 0; w < windows_per_channel; ++w) out[w] = at(channel, w)[id];
  return out;
}

void EngineConfig::validate() const {
  if (zc_threshold < 0 || ssc_threshold < 0 || wa_threshold_fraction < 0 || rqa_threshold_fraction < 0 ||
      entropy_r_fraction < 0)
    throw ConfigError("feature thresholds must be non-negative");
  if (!(band_low > 0 && band_low < band_high)) throw ConfigError("feature band must satisfy 0 < low < high");
  if (stft_frame_len < 2) throw ConfigError("stft_frame_len must be at least 2");
  if (!(stft_overlap >= 0.0 && stft_overlap < 1.0)) throw ConfigError("stft_overlap must lie in [0, 1)");
  if (wavelet_levels < 1) throw ConfigError("wavelet_levels must be positive");
  if (rqa_embedding < 1 || rqa_delay < 1) throw ConfigError("RQA embedding and delay must be positive");
  if (entropy_m < 1) throw ConfigError("entropy embedding must be positive");
  if (higuchi_kmax < 2) throw ConfigError("higuchi k_max must be at least 2");
  if (permutation_order < 2 || permutation_order > 8 || permutation_delay < 1)
    throw ConfigError("permutation entropy order must be in 2..8 and delay positive");
  if (dfa_min_scale < 4 || dfa_max_scale < 2 * dfa_min_scale)
    throw ConfigError("DFA scales need min >= 4 and max >= 2*min");
}

unsigned EngineConfig::resolved_threads() const {
  if (thread_count > 0) return thread_count;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace semg
