// semgfx: sEMG fatigue feature pipeline.
//
//   semgfx synth      --seed 7 --duration 60 --out data/rec
//   semgfx extract    --input data/rec.csv --meta data/rec.meta --out rec.featmap.csv
//   semgfx trends     --featmap rec.featmap.csv --out rec.trends.csv --plot rec.trendplot.csv
//   semgfx export-seq --featmap rec.featmap.csv --labels data/rec_labels.csv --out rec.seq.csv
//   semgfx bench      --threads 1,2,4,8 --windows 10000

#include "semg/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace semg;

// Flags shared by every subcommand that reads pipeline settings. Flags win
// over the config file.
struct CommonFlags {
  std::string config;
  std::optional<std::string> window_s, stride_s, band, notch, threads, grouping, seq_len;
  bool zero_phase = false;
  bool no_filter = false;

  void attach(CLI::App* app, bool filtering) {
    app->add_option("--config", config, "flat key=value config file");
    app->add_option("--window-s", window_s, "window length in seconds (default 0.5)");
    app->add_option("--stride-s", stride_s, "stride in seconds (default 0.25)");
    app->add_option("--threads", threads, "worker threads, 0 = all cores");
    app->add_option("--grouping", grouping, "empirical|table");
    app->add_option("--seq-len", seq_len, "windows per exported sequence (default 5)");
    if (filtering) {
      app->add_option("--band", band, "band-pass edges LOW:HIGH in Hz (default 20:450)");
      app->add_option("--notch", notch, "notch frequency in Hz, or off (default 50)");
      app->add_flag("--zero-phase", zero_phase, "forward-backward filtering");
      app->add_flag("--no-filter", no_filter, "skip preprocessing");
    }
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!config.empty()) cfg.load(std::filesystem::path(config));
    auto apply = [&](const char* key, const std::optional<std::string>& v) {
      if (v) cfg.set(key, *v);
    };
    apply("window_s", window_s);
    apply("stride_s", stride_s);
    apply("band", band);
    apply("notch", notch);
    apply("threads", threads);
    apply("grouping", grouping);
    apply("seq_len", seq_len);
    if (zero_phase) cfg.phase = PhaseMode::ZeroPhase;
    if (no_filter) cfg.preprocess = false;
    cfg.validate();
    return cfg;
  }
};

std::vector<unsigned> parse_thread_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<unsigned>(std::stoul(item)));
  if (out.empty()) throw ConfigError("empty thread list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sEMG muscle-fatigue feature pipeline"};
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "preprocess a signal CSV and write a featmap_v1 file");
  CommonFlags extract_flags;
  extract_flags.attach(extract, true);
  std::string in_path, meta_path, out_path;
  extract->add_option("--input", in_path, "signal CSV")->required();
  extract->add_option("--meta", meta_path, "sidecar metadata file");
  extract->add_option("--out", out_path, "featmap output")->required();

  // trends
  auto* trends = app.add_subcommand("trends", "fit per-feature trends and group features");
  std::string trend_featmap, trend_out, trend_plot, trend_labels;
  trends->add_option("--featmap", trend_featmap, "featmap_v1 input")->required();
  trends->add_option("--out", trend_out, "trend report CSV")->required();
  trends->add_option("--plot", trend_plot, "plot-data CSV (mean trajectory + fit)");
  trends->add_option("--labels", trend_labels, "labels CSV; regress on RPE instead of window index");

  // export-seq
  auto* exporter = app.add_subcommand("export-seq", "export T-window sequences for model training");
  CommonFlags export_flags;
  export_flags.attach(exporter, false);
  std::string seq_featmap, seq_labels, seq_out, seq_channel;
  exporter->add_option("--featmap", seq_featmap, "featmap_v1 input")->required();
  exporter->add_option("--labels", seq_labels, "window_index,rpe,state labels")->required();
  exporter->add_option("--out", seq_out, "sequence dataset CSV")->required();
  exporter->add_option("--channel", seq_channel, "only this channel (default: all, channel-major)");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic fatiguing recording");
  SynthSpec spec;
  std::string synth_out, label_policy = "thirds";
  synth->add_option("--out", synth_out, "output prefix")->required();
  synth->add_option("--seed", spec.seed, "RNG seed (default 1)");
  synth->add_option("--duration", spec.duration_s, "seconds");
  synth->add_option("--rate", spec.sampling_rate, "Hz");
  synth->add_option("--amplitude", spec.base_amplitude, "base amplitude a0");
  synth->add_option("--beta", spec.amplitude_growth, "fractional amplitude growth");
  synth->add_option("--f0", spec.center_freq, "initial centre frequency, Hz");
  synth->add_option("--gamma", spec.freq_compression, "fractional centre-frequency drop");
  synth->add_option("--bandwidth", spec.bandwidth, "band width at t=0, Hz");
  synth->add_option("--noise-floor", spec.noise_floor, "white-noise std as a fraction of a0");
  synth->add_option("--labels", label_policy, "thirds|ramp");
  synth->add_option("--window-s", spec.window.window_len_s, "label window length, s");
  synth->add_option("--stride-s", spec.window.stride_s, "label window stride, s");

  // bench
  auto* bench = app.add_subcommand("bench", "time the engine across thread counts");
  CommonFlags bench_flags;
  bench_flags.attach(bench, false);
  std::string bench_threads = "1";
  Index bench_windows = 10000;
  int bench_repeats = 3;
  std::string bench_text = "bench_report.txt", bench_kv = "bench_report.kv";
  bench->remove_option(bench->get_option("--threads"));
  bench->add_option("--threads", bench_threads, "comma-separated thread counts; first is the baseline");
  bench->add_option("--windows", bench_windows, "work items (channel x window), default 10000");
  bench->add_option("--repeats", bench_repeats, "timed runs per thread count (default 3)");
  bench->add_option("--report", bench_text, "text report path");
  bench->add_option("--kv", bench_kv, "key=value report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) {
      const PipelineConfig cfg = extract_flags.resolve();
      std::optional<std::filesystem::path> meta;
      if (!meta_path.empty()) meta = meta_path;
      const ExtractSummary s = run_extract(in_path, meta, out_path, cfg);
      for (const auto& m : s.diagnostics.messages) std::cerr << "note: " << m << '\n';
      if (s.rows == 0) {
        std::cerr << "error: no windows extracted\n";
        return 1;
      }
      std::cerr << s.describe() << '\n';
    } else if (*trends) {
      std::optional<std::filesystem::path> plot, labels;
      if (!trend_plot.empty()) plot = trend_plot;
      if (!trend_labels.empty()) labels = trend_labels;
      const TrendAnalysis a = run_trends(trend_featmap, trend_out, plot, labels);
      std::cerr << "increasing: " << a.groups.increasing.size() << ", decreasing: " << a.groups.decreasing.size()
                << ", nonsignificant: " << a.groups.nonsignificant.size() << '\n';
    } else if (*exporter) {
      const PipelineConfig cfg = export_flags.resolve();
      Diagnostics diag;
      std::optional<std::string> ch;
      if (!seq_channel.empty()) ch = seq_channel;
      const SequenceDataset ds = run_export_sequences(seq_featmap, seq_labels, seq_out, cfg, ch, &diag);
      for (const auto& m : diag.messages) std::cerr << "note: " << m << '\n';
      Index channels = 0;
      for (std::size_t i = 0; i < ds.sequences.size(); ++i)
        if (i == 0 || ds.sequences[i].channel != ds.sequences[i - 1].channel) ++channels;
      std::cerr << "sequences: " << ds.sequences.size() << " total";
      if (channels > 0) std::cerr << " (" << ds.sequences.size() / static_cast<std::size_t>(channels) << " per channel)";
      std::cerr << ", widths inc=" << ds.increasing.size() << " dec=" << ds.decreasing.size() << '\n';
    } else if (*synth) {
      if (label_policy == "thirds") spec.label_policy = LabelPolicy::Thirds;
      else if (label_policy == "ramp") spec.label_policy = LabelPolicy::RpeRamp;
      else throw ConfigError("--labels must be thirds or ramp");
      const SynthFiles f = run_synth(spec, synth_out);
      std::cerr << "wrote " << f.signal.string() << ", " << f.sidecar.string() << ", " << f.labels.string() << '\n';
    } else if (*bench) {
      const PipelineConfig cfg = bench_flags.resolve();
      const BenchmarkReport r = run_bench(parse_thread_list(bench_threads), bench_windows, cfg, bench_text, bench_kv,
                                          bench_repeats);
      std::cout << r.to_text();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
