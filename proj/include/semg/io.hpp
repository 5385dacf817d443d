#pragma once

#include "semg/features.hpp"
#include "semg/signal.hpp"
#include "semg/trend.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace semg {

/// 17 significant digits, enough to round-trip a double.
std::string format_value(double v);

/// Signal CSV: header `time_s,<ch1>,<ch2>,...` (time column optional).
/// Without a sidecar the rate comes from the time column, else `default_rate`.
SignalRecord read_signal_csv(std::istream& in, double default_rate = 2000.0);
SignalRecord read_signal_csv(const std::filesystem::path& path, double default_rate = 2000.0);
void write_signal_csv(const SignalRecord& signal, std::ostream& out);

/// Sidecar rows: `sampling_rate,<hz>`, `mvc_level,<pct>`, `subject_id,<id>`,
/// `rpe,<t_seconds>,<value>`. `key=value` is accepted too; `#` starts a comment.
void read_sidecar(std::istream& in, SignalRecord& signal);
void read_sidecar(const std::filesystem::path& path, SignalRecord& signal);
void write_sidecar(const SignalRecord& signal, std::ostream& out);

/// featmap_v1: a `# featmap_v1` line, then header
/// `window_index,channel,start_sample,<36 names>,quality_bitmask`.
void write_featmap_csv(const FeatureMatrix& m, std::ostream& out);
FeatureMatrix read_featmap_csv(std::istream& in);

/// `window_index,rpe,state`
void write_labels_csv(const std::vector<FatigueLabel>& labels, std::ostream& out);
std::vector<FatigueLabel> read_labels_csv(std::istream& in);

/// `feature,channel,r,slope,intercept,p_value,class`
void write_trend_csv(const TrendAnalysis& analysis, const FeatureMatrix& m, std::ostream& out);

/// Per grouped feature: channel-averaged trajectory with its fitted line,
/// `feature,window_index,mean_value,fitted_value`.
void write_trend_plot_csv(const FeatureMatrix& m, std::ostream& out);

/// Overlapping runs of T consecutive windows of one channel, labelled by the
/// state of the last window.
struct SequenceDataset {
  Index seq_len = 0;
  std::vector<FeatureId> increasing;
  std::vector<FeatureId> decreasing;
  struct Sequence {
    Index channel = 0;
    Index first_window = 0;
    FatigueLabel label;
    Eigen::MatrixXd inc;  // T x |increasing|
    Eigen::MatrixXd dec;  // T x |decreasing|
  };
  std::vector<Sequence> sequences;
};

/// `seq_index,window_offset,inc_<name>...,dec_<name>...,label`, one row per
/// window of each sequence; label is 0 Relaxed, 1 Exerted, 2 Fatigued.
void write_sequences_csv(const SequenceDataset& ds, std::ostream& out);

}  // namespace semg
