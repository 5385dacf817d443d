#include "semg/pipeline.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace semg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("semg_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int status;
  std::string output;
};

Run semgfx(const std::string& args, const TempDir& dir) {
  const fs::path log = dir / "cli.log";
  const std::string cmd = std::string("\"") + SEMGFX_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return {rc, slurp(log)};
}

long count_lines(const fs::path& p) {
  std::ifstream in(p);
  long n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

// One shared 60 s default recording for the CLI cases.
const TempDir& workspace() {
  static TempDir dir;
  static bool ready = [] {
    return semgfx("synth --seed 7 --out \"" + (dir / "rec").string() + "\"", dir).status == 0 &&
           semgfx("extract --input \"" + (dir / "rec.csv").string() + "\" --meta \"" + (dir / "rec.meta").string() +
                      "\" --out \"" + (dir / "rec.feat").string() + "\"",
                  dir)
                   .status == 0;
  }();
  REQUIRE(ready);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  PipelineConfig cfg;
  std::istringstream in("# comment\nband = 30:400\nnotch=off\nthreads,4\nseq_len=3\ngrouping=table\nzero_phase=true\n");
  cfg.load(in);
  CHECK(cfg.filter.band_low == 30);
  CHECK(cfg.filter.band_high == 400);
  CHECK(cfg.engine.band_low == 30);
  CHECK_FALSE(cfg.filter.notch_enabled);
  CHECK(cfg.engine.thread_count == 4);
  CHECK(cfg.seq_len == 3);
  CHECK(cfg.grouping == GroupingMode::Table);
  CHECK(cfg.phase == PhaseMode::ZeroPhase);
  CHECK_THROWS_AS(cfg.set("no_such_key", "1"), ConfigError);
  CHECK_THROWS_AS(parse_band("450-20"), ConfigError);
  cfg.seq_len = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("in-memory pipeline arithmetic") {
  SynthSpec spec;
  spec.seed = 5;
  const auto gen = generate(spec);
  PipelineConfig cfg;
  const auto summary = extract_signal(gen.signal, cfg);
  CHECK(summary.windows_per_channel == 239);
  CHECK(summary.rows == 478);

  const auto table = table_groups();
  const auto ds = export_sequences(summary.matrix, gen.labels, table, 5);
  CHECK(ds.sequences.size() == 2 * 235);
  const auto one_channel = export_sequences(summary.matrix, gen.labels, table, 5, Index{0});
  CHECK(one_channel.sequences.size() == 235);
  CHECK(ds.increasing.size() == 19);
  CHECK(ds.decreasing.size() == 15);
  for (const auto& s : ds.sequences) {
    CHECK(s.label == gen.labels[static_cast<std::size_t>(s.first_window + 4)]);
    CHECK(s.inc.rows() == 5);
  }

  // T = 1: each sequence is exactly one window
  const auto single = export_sequences(summary.matrix, gen.labels, table, 1);
  REQUIRE(single.sequences.size() == summary.matrix.rows.size());
  for (std::size_t i = 0; i < single.sequences.size(); ++i) {
    const auto& s = single.sequences[i];
    const auto& row = summary.matrix.at(s.channel, s.first_window);
    for (std::size_t j = 0; j < table.increasing.size(); ++j) CHECK(s.inc(0, static_cast<Index>(j)) == row[table.increasing[j]]);
    for (std::size_t j = 0; j < table.decreasing.size(); ++j) CHECK(s.dec(0, static_cast<Index>(j)) == row[table.decreasing[j]]);
    CHECK(s.label == gen.labels[static_cast<std::size_t>(s.first_window)]);
  }

  Diagnostics diag;
  const auto none = export_sequences(summary.matrix, gen.labels, table, 500, std::nullopt, &diag);
  CHECK(none.sequences.empty());
  CHECK_FALSE(diag.empty());
}

TEST_CASE("cli: extract writes 239 rows per channel and reruns byte-identically") {
  const auto& dir = workspace();
  CHECK(count_lines(dir / "rec.feat") == 2 + 2 * 239);
  const auto again = semgfx("extract --input \"" + (dir / "rec.csv").string() + "\" --meta \"" +
                                (dir / "rec.meta").string() + "\" --out \"" + (dir / "rec2.feat").string() + "\"",
                            dir);
  CHECK(again.status == 0);
  CHECK(again.output.find("239") != std::string::npos);
  CHECK(slurp(dir / "rec.feat") == slurp(dir / "rec2.feat"));
}

TEST_CASE("cli: empty input fails with a no-samples diagnostic") {
  const auto& dir = workspace();
  std::ofstream(dir / "empty.csv").close();
  const auto r = semgfx("extract --input \"" + (dir / "empty.csv").string() + "\" --out \"" +
                            (dir / "empty.feat").string() + "\"",
                        dir);
  CHECK(r.status != 0);
  CHECK(r.output.find("no samples") != std::string::npos);
}

TEST_CASE("cli: malformed row fails with its line number") {
  const auto& dir = workspace();
  std::ofstream(dir / "bad.csv") << "time_s,a\n0,1\n0.0005,x\n";
  const auto r = semgfx("extract --input \"" + (dir / "bad.csv").string() + "\" --out \"" +
                            (dir / "bad.feat").string() + "\"",
                        dir);
  CHECK(r.status != 0);
  CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("cli: export-seq with table grouping") {
  const auto& dir = workspace();
  const auto r = semgfx("export-seq --grouping table --channel biceps --featmap \"" + (dir / "rec.feat").string() +
                            "\" --labels \"" + (dir / "rec_labels.csv").string() + "\" --out \"" +
                            (dir / "seq.csv").string() + "\"",
                        dir);
  REQUIRE(r.status == 0);
  CHECK(r.output.find("235") != std::string::npos);
  std::ifstream in(dir / "seq.csv");
  std::string header;
  std::getline(in, header);
  int inc = 0, dec = 0;
  std::stringstream cols(header);
  for (std::string c; std::getline(cols, c, ',');) {
    inc += c.rfind("inc_", 0) == 0;
    dec += c.rfind("dec_", 0) == 0;
  }
  CHECK(inc == 19);
  CHECK(dec == 15);
  CHECK(count_lines(dir / "seq.csv") == 1 + 235 * 5);

  const auto all = semgfx("export-seq --featmap \"" + (dir / "rec.feat").string() + "\" --labels \"" +
                              (dir / "rec_labels.csv").string() + "\" --out \"" + (dir / "seq_all.csv").string() +
                              "\" --seq-len 1",
                          dir);
  CHECK(all.status == 0);
  CHECK(count_lines(dir / "seq_all.csv") == 1 + 478);
}

TEST_CASE("cli: trends on default synth output report RMS increasing") {
  const auto& dir = workspace();
  const auto r = semgfx("trends --featmap \"" + (dir / "rec.feat").string() + "\" --out \"" +
                            (dir / "trend.csv").string() + "\" --plot \"" + (dir / "plot.csv").string() + "\"",
                        dir);
  REQUIRE(r.status == 0);
  const std::string report = slurp(dir / "trend.csv");
  CHECK(report.rfind("feature,channel,r,slope,intercept,p_value,class\n", 0) == 0);
  CHECK(report.find("\nRMS,biceps,") != std::string::npos);
  std::istringstream lines(report);
  for (std::string line; std::getline(lines, line);)
    if (line.rfind("RMS,", 0) == 0) CHECK(line.substr(line.rfind(',') + 1) == "Increasing");
  CHECK(count_lines(dir / "plot.csv") == 1 + 34 * 239);
}

TEST_CASE("cli: synth with the same seed twice is identical") {
  const auto& dir = workspace();
  REQUIRE(semgfx("synth --seed 7 --duration 5 --out \"" + (dir / "a").string() + "\"", dir).status == 0);
  REQUIRE(semgfx("synth --seed 7 --duration 5 --out \"" + (dir / "b").string() + "\"", dir).status == 0);
  for (const char* ext : {".csv", ".meta", "_labels.csv"})
    CHECK(slurp(dir / (std::string("a") + ext)) == slurp(dir / (std::string("b") + ext)));
}

TEST_CASE("cli: bench with one thread reports speedup 1") {
  const auto& dir = workspace();
  const auto r = semgfx("bench --threads 1 --windows 40 --repeats 1 --report \"" + (dir / "bench.txt").string() +
                            "\" --kv \"" + (dir / "bench.kv").string() + "\"",
                        dir);
  REQUIRE(r.status == 0);
  const std::string kv = slurp(dir / "bench.kv");
  INFO(kv);
  CHECK(kv.find("threads.1.speedup=1\n") != std::string::npos);
  CHECK(slurp(dir / "bench.txt").find("speedup") != std::string::npos);
}

TEST_CASE("cli: bad flags exit nonzero") {
  const auto& dir = workspace();
  CHECK(semgfx("extract --input nowhere.csv --out x.feat", dir).status != 0);
  CHECK(semgfx("synth --out \"" + (dir / "z").string() + "\" --gamma 0.95", dir).status != 0);
  CHECK(semgfx("frobnicate", dir).status != 0);
}
