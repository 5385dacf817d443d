#include "semg/engine.hpp"
#include "semg/io.hpp"
#include "semg/trend.hpp"
#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace semg;

namespace {
std::string line_of(const DataError& e) { return e.what(); }
}  // namespace

TEST_CASE("signal csv round trip is exact") {
  auto s = testing::record(Eigen::MatrixXd::Random(50, 2) * 3.3, 1000);
  std::stringstream buf;
  write_signal_csv(s, buf);
  const auto back = read_signal_csv(buf);
  CHECK(back.samples.cwiseEqual(s.samples).all());
  CHECK(back.channels == s.channels);
  CHECK(back.sampling_rate == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("signal csv without a time column uses the default rate") {
  std::istringstream in("biceps,triceps\n1,2\n3,4\n");
  const auto s = read_signal_csv(in, 1500.0);
  CHECK(s.sampling_rate == 1500.0);
  CHECK(s.samples(1, 0) == 3.0);
  CHECK(s.samples(1, 1) == 4.0);
}

TEST_CASE("malformed rows report their line") {
  std::istringstream bad("time_s,a\n0,1\n0.0005,oops\n");
  try {
    (void)read_signal_csv(bad);
    FAIL("expected a DataError");
  } catch (const DataError& e) {
    CHECK(line_of(e).find("line 3") != std::string::npos);
    CHECK(e.line() == 3);
  }
  std::istringstream short_row("time_s,a,b\n0,1,2\n0.0005,1\n");
  CHECK_THROWS_WITH_AS(read_signal_csv(short_row), doctest::Contains("line 3"), DataError);
}

TEST_CASE("empty input reports no samples") {
  std::istringstream empty("");
  CHECK_THROWS_WITH_AS(read_signal_csv(empty), doctest::Contains("no samples"), DataError);
  std::istringstream header_only("time_s,a\n");
  CHECK_THROWS_WITH_AS(read_signal_csv(header_only), doctest::Contains("no samples"), DataError);
}

TEST_CASE("sidecar round trip and errors") {
  SignalRecord s = testing::record(Eigen::MatrixXd::Zero(4, 1), 1234.5);
  s.mvc_level = 40;
  s.subject_id = "P07";
  s.rpe_marks = {{0.0, 6}, {1.0, 11}, {2.5, 20}};
  std::stringstream buf;
  write_sidecar(s, buf);
  SignalRecord back = testing::record(Eigen::MatrixXd::Zero(4, 1));
  read_sidecar(buf, back);
  CHECK(back.sampling_rate == 1234.5);
  CHECK(back.mvc_level == 40);
  CHECK(back.subject_id == "P07");
  REQUIRE(back.rpe_marks.size() == 3);
  CHECK(back.rpe_marks[2].time_s == 2.5);
  CHECK(back.rpe_marks[2].rpe == 20);

  std::istringstream eq("# comment\nsampling_rate = 500\n");
  read_sidecar(eq, back);
  CHECK(back.sampling_rate == 500);

  std::istringstream bad_rpe("sampling_rate,2000\nrpe,1,25\n");
  CHECK_THROWS_WITH_AS(read_sidecar(bad_rpe, back), doctest::Contains("line 2"), DataError);
  std::istringstream unknown("colour,blue\n");
  CHECK_THROWS_AS(read_sidecar(unknown, back), DataError);
}

TEST_CASE("featmap round trip is exact, including flags") {
  const auto sig = testing::record(Eigen::MatrixXd(Eigen::MatrixXd::Random(3000, 2)));
  auto m = extract_features(sig, WindowPlan{}, EngineConfig{});
  m.rows[1].set(FeatureId::SE, 0.0, true);
  std::stringstream buf;
  write_featmap_csv(m, buf);
  const std::string text = buf.str();
  CHECK(text.rfind("# featmap_v1\nwindow_index,channel,start_sample,AEMG,", 0) == 0);
  const auto back = read_featmap_csv(buf);
  CHECK(back.channel_names == m.channel_names);
  CHECK(back.windows_per_channel == m.windows_per_channel);
  CHECK(bit_identical(back, m));
  CHECK(back.rows[1].degenerate(FeatureId::SE));
}

TEST_CASE("featmap format errors") {
  std::istringstream no_marker("window_index,channel\n");
  CHECK_THROWS_AS(read_featmap_csv(no_marker), DataError);
  std::istringstream wrong_cols("# featmap_v1\nwindow_index,channel,start_sample\n");
  CHECK_THROWS_AS(read_featmap_csv(wrong_cols), DataError);
}

TEST_CASE("labels round trip and validation") {
  const std::vector<FatigueLabel> labels{FatigueLabel::from_rpe(6), FatigueLabel::from_rpe(13),
                                         FatigueLabel::from_rpe(19)};
  std::stringstream buf;
  write_labels_csv(labels, buf);
  CHECK(buf.str() == "window_index,rpe,state\n0,6,Relaxed\n1,13,Exerted\n2,19,Fatigued\n");
  CHECK(read_labels_csv(buf) == labels);

  std::istringstream mismatch("window_index,rpe,state\n0,6,Fatigued\n");
  CHECK_THROWS_WITH_AS(read_labels_csv(mismatch), doctest::Contains("line 2"), DataError);
  std::istringstream gap("window_index,rpe,state\n0,6,Relaxed\n2,6,Relaxed\n");
  CHECK_THROWS_AS(read_labels_csv(gap), DataError);
}

TEST_CASE("trend and sequence writers") {
  SequenceDataset ds;
  ds.seq_len = 2;
  ds.increasing = {FeatureId::RMS};
  ds.decreasing = {FeatureId::MDF, FeatureId::SE};
  SequenceDataset::Sequence seq;
  seq.label = FatigueLabel::from_rpe(16);
  seq.inc = Eigen::MatrixXd::Constant(2, 1, 0.5);
  seq.dec = Eigen::MatrixXd::Constant(2, 2, 2.0);
  ds.sequences.push_back(seq);
  std::ostringstream out;
  write_sequences_csv(ds, out);
  CHECK(out.str() == "seq_index,window_offset,inc_RMS,dec_MDF,dec_SE,label\n0,0,0.5,2,2,2\n0,1,0.5,2,2,2\n");

  CHECK(format_value(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_value(1.0 / 3.0)) == 1.0 / 3.0);
}
