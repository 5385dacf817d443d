#include "semg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace semg {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw ConfigError(key + ": not an integer '" + v + "'");
  return static_cast<long long>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot open " + p.string());
  return in;
}

}  // namespace

std::pair<double, double> parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("band must look like LOW:HIGH, got '" + text + "'");
  return {to_double("band", trim(text.substr(0, colon))), to_double("band", trim(text.substr(colon + 1)))};
}

void PipelineConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string v = trim(raw_value);
  auto& e = engine;
  if (key == "window_s") window.window_len_s = to_double(key, v);
  else if (key == "stride_s") window.stride_s = to_double(key, v);
  else if (key == "band") std::tie(filter.band_low, filter.band_high) = parse_band(v);
  else if (key == "band_low") filter.band_low = to_double(key, v);
  else if (key == "band_high") filter.band_high = to_double(key, v);
  else if (key == "filter_order") filter.filter_order = static_cast<int>(to_int(key, v));
  else if (key == "notch") {
    if (v == "off" || v == "none" || v == "0") filter.notch_enabled = false;
    else {
      filter.notch_enabled = true;
      filter.notch_freq = to_double(key, v);
    }
  }
  else if (key == "notch_bandwidth") filter.notch_bandwidth = to_double(key, v);
  else if (key == "preprocess") preprocess = to_bool(key, v);
  else if (key == "zero_phase") phase = to_bool(key, v) ? PhaseMode::ZeroPhase : PhaseMode::Causal;
  else if (key == "threads") e.thread_count = static_cast<unsigned>(to_int(key, v));
  else if (key == "grouping") {
    if (v == "empirical") grouping = GroupingMode::Empirical;
    else if (v == "table") grouping = GroupingMode::Table;
    else throw ConfigError("grouping must be empirical or table");
  }
  else if (key == "seq_len") seq_len = static_cast<Index>(to_int(key, v));
  else if (key == "sampling_rate") default_sampling_rate = to_double(key, v);
  else if (key == "zc_threshold") e.zc_threshold = to_double(key, v);
  else if (key == "ssc_threshold") e.ssc_threshold = to_double(key, v);
  else if (key == "wa_threshold_fraction") e.wa_threshold_fraction = to_double(key, v);
  else if (key == "aemg_smoothing_s") e.aemg_smoothing_s = to_double(key, v);
  else if (key == "stft_frame_len") e.stft_frame_len = static_cast<Index>(to_int(key, v));
  else if (key == "stft_overlap") e.stft_overlap = to_double(key, v);
  else if (key == "wavelet_levels") e.wavelet_levels = static_cast<int>(to_int(key, v));
  else if (key == "rqa_embedding") e.rqa_embedding = static_cast<int>(to_int(key, v));
  else if (key == "rqa_delay") e.rqa_delay = static_cast<int>(to_int(key, v));
  else if (key == "rqa_threshold_fraction") e.rqa_threshold_fraction = to_double(key, v);
  else if (key == "entropy_m") e.entropy_m = static_cast<int>(to_int(key, v));
  else if (key == "entropy_r_fraction") e.entropy_r_fraction = to_double(key, v);
  else if (key == "higuchi_kmax") e.higuchi_kmax = static_cast<int>(to_int(key, v));
  else if (key == "permutation_order") e.permutation_order = static_cast<int>(to_int(key, v));
  else if (key == "permutation_delay") e.permutation_delay = static_cast<int>(to_int(key, v));
  else if (key == "dfa_min_scale") e.dfa_min_scale = static_cast<Index>(to_int(key, v));
  else if (key == "dfa_max_scale") e.dfa_max_scale = static_cast<Index>(to_int(key, v));
  else throw ConfigError("unknown config key '" + key + "'");
  // the feature band follows the preprocessing band
  if (key == "band" || key == "band_low" || key == "band_high") {
    e.band_low = filter.band_low;
    e.band_high = filter.band_high;
  }
}

void PipelineConfig::load(std::istream& in) {
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(',');
    if (sep == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    set(line.substr(0, sep), line.substr(sep + 1));
  }
}

void PipelineConfig::load(const std::filesystem::path& path) {
  auto in = open_in(path);
  load(in);
}

void PipelineConfig::validate() const {
  engine.validate();
  if (seq_len < 1) throw ConfigError("seq_len must be at least 1");
  if (!(default_sampling_rate > 0.0)) throw ConfigError("sampling_rate must be positive");
}

std::string ExtractSummary::describe() const {
  std::ostringstream os;
  os << "windows per channel: " << windows_per_channel << ", rows (channel x window): " << rows;
  if (degenerate_counts.empty()) {
    os << ", no degenerate values";
  } else {
    os << ", degenerate values:";
    for (const auto& [id, n] : degenerate_counts) os << ' ' << feature_name(id) << '=' << n;
  }
  return os.str();
}

ExtractSummary extract_signal(const SignalRecord& raw, const PipelineConfig& cfg) {
  cfg.validate();
  raw.validate();
  ExtractSummary s;
  const SignalRecord* input = &raw;
  SignalRecord filtered;
  if (cfg.preprocess) {
    filtered = apply_filters(design_filters(cfg.filter, raw.sampling_rate), raw, cfg.phase);
    input = &filtered;
  }
  s.matrix = extract_features(*input, cfg.window, cfg.engine, &s.diagnostics);
  s.windows_per_channel = s.matrix.windows_per_channel;
  s.rows = static_cast<Index>(s.matrix.rows.size());
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    Index n = 0;
    for (const auto& r : s.matrix.rows) n += r.degenerate(feature_at(i));
    if (n) s.degenerate_counts.emplace_back(feature_at(i), n);
  }
  return s;
}

ExtractSummary run_extract(const std::filesystem::path& input, const std::optional<std::filesystem::path>& sidecar,
                           const std::filesystem::path& output, const PipelineConfig& cfg) {
  SignalRecord sig = read_signal_csv(input, cfg.default_sampling_rate);
  if (sidecar) read_sidecar(*sidecar, sig);
  ExtractSummary s = extract_signal(sig, cfg);
  auto out = open_out(output);
  write_featmap_csv(s.matrix, out);
  if (!out) throw DataError("failed writing " + output.string());
  return s;
}

FeatureGroups resolve_groups(const FeatureMatrix& m, GroupingMode mode) {
  if (mode == GroupingMode::Table) return table_groups();
  return group_features(m).groups;
}

SequenceDataset export_sequences(const FeatureMatrix& m, const std::vector<FatigueLabel>& labels,
                                 const FeatureGroups& groups, Index seq_len, std::optional<Index> channel,
                                 Diagnostics* diag) {
  if (seq_len < 1) throw ConfigError("seq_len must be at least 1");
  if (static_cast<Index>(labels.size()) < m.windows_per_channel)
    throw DataError("labels cover " + std::to_string(labels.size()) + " windows, featmap has " +
                    std::to_string(m.windows_per_channel));
  SequenceDataset ds;
  ds.seq_len = seq_len;
  ds.increasing = groups.increasing;
  ds.decreasing = groups.decreasing;
  if (m.windows_per_channel < seq_len) {
    note(diag, "only " + std::to_string(m.windows_per_channel) + " windows; sequences need " + std::to_string(seq_len));
    return ds;
  }
  const Index per_channel = m.windows_per_channel - seq_len + 1;
  for (Index c = 0; c < m.channel_count(); ++c) {
    if (channel && *channel != c) continue;
    for (Index s = 0; s < per_channel; ++s) {
      SequenceDataset::Sequence seq;
      seq.channel = c;
      seq.first_window = s;
      seq.label = labels[static_cast<std::size_t>(s + seq_len - 1)];
      seq.inc.resize(seq_len, static_cast<Index>(ds.increasing.size()));
      seq.dec.resize(seq_len, static_cast<Index>(ds.decreasing.size()));
      for (Index t = 0; t < seq_len; ++t) {
        const FeatureVector& fv = m.at(c, s + t);
        for (std::size_t j = 0; j < ds.increasing.size(); ++j) seq.inc(t, static_cast<Index>(j)) = fv[ds.increasing[j]];
        for (std::size_t j = 0; j < ds.decreasing.size(); ++j) seq.dec(t, static_cast<Index>(j)) = fv[ds.decreasing[j]];
      }
      ds.sequences.push_back(std::move(seq));
    }
  }
  return ds;
}

SequenceDataset run_export_sequences(const std::filesystem::path& featmap, const std::filesystem::path& labels_path,
                                     const std::filesystem::path& output, const PipelineConfig& cfg,
                                     std::optional<std::string> channel, Diagnostics* diag) {
  auto fin = open_in(featmap);
  const FeatureMatrix m = read_featmap_csv(fin);
  auto lin = open_in(labels_path);
  const auto labels = read_labels_csv(lin);
  std::optional<Index> ch;
  if (channel) {
    const auto it = std::find(m.channel_names.begin(), m.channel_names.end(), *channel);
    if (it == m.channel_names.end()) throw ConfigError("unknown channel '" + *channel + "'");
    ch = it - m.channel_names.begin();
  }
  const FeatureGroups groups = m.windows_per_channel >= 3 || cfg.grouping == GroupingMode::Table
                                   ? resolve_groups(m, cfg.grouping)
                                   : table_groups();
  SequenceDataset ds = export_sequences(m, labels, groups, cfg.seq_len, ch, diag);
  auto out = open_out(output);
  write_sequences_csv(ds, out);
  return ds;
}

TrendAnalysis run_trends(const std::filesystem::path& featmap, const std::filesystem::path& output,
                         const std::optional<std::filesystem::path>& plot_output,
                         const std::optional<std::filesystem::path>& labels_path) {
  auto fin = open_in(featmap);
  const FeatureMatrix m = read_featmap_csv(fin);
  std::optional<Eigen::VectorXd> regressor;
  if (labels_path) {
    auto lin = open_in(*labels_path);
    const auto labels = read_labels_csv(lin);
    if (static_cast<Index>(labels.size()) < m.windows_per_channel) throw DataError("labels do not cover every window");
    regressor = Eigen::VectorXd(m.windows_per_channel);
    for (Index w = 0; w < m.windows_per_channel; ++w) (*regressor)[w] = labels[static_cast<std::size_t>(w)].rpe;
  }
  TrendAnalysis a = group_features(m, regressor);
  auto out = open_out(output);
  write_trend_csv(a, m, out);
  if (plot_output) {
    auto pout = open_out(*plot_output);
    write_trend_plot_csv(m, pout);
  }
  return a;
}

SynthFiles run_synth(const SynthSpec& spec, const std::filesystem::path& prefix) {
  const SynthOutput gen = generate(spec);
  SynthFiles files{prefix.string() + ".csv", prefix.string() + ".meta", prefix.string() + "_labels.csv"};
  {
    auto out = open_out(files.signal);
    write_signal_csv(gen.signal, out);
  }
  {
    auto out = open_out(files.sidecar);
    write_sidecar(gen.signal, out);
  }
  {
    auto out = open_out(files.labels);
    write_labels_csv(gen.labels, out);
  }
  return files;
}

SignalRecord benchmark_workload(Index work_items, const WindowPlan& plan, std::uint64_t seed) {
  SynthSpec spec;
  spec.seed = seed;
  spec.window = plan;
  const double fs = spec.sampling_rate;
  const Index per_channel = (work_items + 1) / 2;
  const Index samples = plan.window_len(fs) + (per_channel - 1) * plan.stride(fs);
  spec.duration_s = std::max(static_cast<double>(samples) / fs, 3.0 * plan.window_len_s);
  return generate(spec).signal;
}

BenchmarkReport run_bench(const std::vector<unsigned>& thread_counts, Index work_items, const PipelineConfig& cfg,
                          const std::filesystem::path& text_out, const std::filesystem::path& kv_out, int repeats) {
  const SignalRecord sig = benchmark_workload(work_items, cfg.window);
  BenchmarkReport rep = benchmark_engine(sig, cfg.window, cfg.engine, thread_counts, repeats);
  {
    auto out = open_out(text_out);
    out << rep.to_text();
  }
  {
    auto out = open_out(kv_out);
    out << rep.to_key_values();
  }
  return rep;
}

}  // namespace semg
