#pragma once

#include "semg/engine.hpp"
#include "semg/filter.hpp"
#include "semg/io.hpp"
#include "semg/synth.hpp"
#include "semg/trend.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace semg {

struct PipelineConfig {
  FilterSpec filter;
  bool preprocess = true;
  PhaseMode phase = PhaseMode::Causal;
  WindowPlan window;
  EngineConfig engine;
  GroupingMode grouping = GroupingMode::Empirical;
  Index seq_len = 5;
  double default_sampling_rate = 2000.0;

  /// Applies one `key=value` setting; throws ConfigError for unknown keys.
  void set(const std::string& key, const std::string& value);
  /// Flat `key=value` (or `key,value`) text; `#` comments.
  void load(std::istream& in);
  void load(const std::filesystem::path& path);
  void validate() const;
};

/// Parses `20:450`.
std::pair<double, double> parse_band(const std::string& text);

struct ExtractSummary {
  FeatureMatrix matrix;
  Index windows_per_channel = 0;
  Index rows = 0;
  std::vector<std::pair<FeatureId, Index>> degenerate_counts;  // nonzero only
  Diagnostics diagnostics;

  std::string describe() const;
};

/// Preprocess (unless disabled) and extract descriptors in memory.
ExtractSummary extract_signal(const SignalRecord& raw, const PipelineConfig& cfg);

/// Reads the signal CSV (plus optional sidecar), writes a featmap_v1 file.
ExtractSummary run_extract(const std::filesystem::path& input, const std::optional<std::filesystem::path>& sidecar,
                           const std::filesystem::path& output, const PipelineConfig& cfg);

/// Groups for sequence export: empirical trend analysis or the fixed table.
FeatureGroups resolve_groups(const FeatureMatrix& m, GroupingMode mode);

/// Overlapping T-window sequences (stride 1) per channel; each sequence takes
/// the label of its last window. Fewer than T windows gives an empty set.
SequenceDataset export_sequences(const FeatureMatrix& m, const std::vector<FatigueLabel>& labels,
                                 const FeatureGroups& groups, Index seq_len,
                                 std::optional<Index> channel = std::nullopt, Diagnostics* diag = nullptr);

SequenceDataset run_export_sequences(const std::filesystem::path& featmap, const std::filesystem::path& labels,
                                     const std::filesystem::path& output, const PipelineConfig& cfg,
                                     std::optional<std::string> channel = std::nullopt, Diagnostics* diag = nullptr);

/// Trend report (+ optional plot data) from a featmap file. With a labels
/// file, per-window RPE replaces the window index as regressor.
TrendAnalysis run_trends(const std::filesystem::path& featmap, const std::filesystem::path& output,
                         const std::optional<std::filesystem::path>& plot_output,
                         const std::optional<std::filesystem::path>& labels = std::nullopt);

struct SynthFiles {
  std::filesystem::path signal, sidecar, labels;
};

/// Writes `<prefix>.csv`, `<prefix>.meta` and `<prefix>_labels.csv`.
SynthFiles run_synth(const SynthSpec& spec, const std::filesystem::path& prefix);

/// Seeded synthetic workload of at least `work_items` (channel x window) items.
SignalRecord benchmark_workload(Index work_items, const WindowPlan& plan, std::uint64_t seed = 42);

BenchmarkReport run_bench(const std::vector<unsigned>& thread_counts, Index work_items, const PipelineConfig& cfg,
                          const std::filesystem::path& text_out, const std::filesystem::path& kv_out, int repeats = 3);

}  // namespace semg
