#include "semg/io.hpp"

#include "semg/error.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace semg {
namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, long line) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) throw DataError("not a number: '" + t + "'", line);
  return v;
}

long long parse_int(const std::string& field, long line) {
  const std::string t = trim(field);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) throw DataError("not an integer: '" + t + "'", line);
  return v;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw DataError("cannot open " + p.string());
  return in;
}

}  // namespace

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SignalRecord read_signal_csv(std::istream& in, double default_rate) {
  std::string line;
  long lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split(line);
      break;
    }
  }
  if (header.empty()) throw DataError("no samples: empty input");
  for (auto& h : header) h = trim(h);
  const bool has_time = header.front() == "time_s";
  SignalRecord sig;
  sig.channels.assign(header.begin() + (has_time ? 1 : 0), header.end());
  if (sig.channels.empty()) throw DataError("header names no channels", lineno);

  const std::size_t cols = header.size();
  std::vector<double> values;
  std::vector<double> times;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != cols)
      throw DataError("expected " + std::to_string(cols) + " fields, found " + std::to_string(fields.size()), lineno);
    for (std::size_t i = 0; i < cols; ++i) {
      const double v = parse_double(fields[i], lineno);
      if (has_time && i == 0)
        times.push_back(v);
      else
        values.push_back(v);
    }
  }
  const auto nch = static_cast<Index>(sig.channels.size());
  const auto rows = static_cast<Index>(values.size()) / nch;
  if (rows == 0) throw DataError("no samples");
  sig.samples = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(values.data(), rows, nch);
  sig.sampling_rate = default_rate;
  if (times.size() >= 2) {
    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (dt > 0.0) sig.sampling_rate = 1.0 / dt;
  }
  return sig;
}

SignalRecord read_signal_csv(const std::filesystem::path& path, double default_rate) {
  auto in = open_in(path);
  return read_signal_csv(in, default_rate);
}

void write_signal_csv(const SignalRecord& signal, std::ostream& out) {
  out << "time_s";
  for (const auto& c : signal.channels) out << ',' << c;
  out << '\n';
  for (Index i = 0; i < signal.length(); ++i) {
    out << format_value(static_cast<double>(i) / signal.sampling_rate);
    for (Index c = 0; c < signal.channel_count(); ++c) out << ',' << format_value(signal.samples(i, c));
    out << '\n';
  }
}

void read_sidecar(std::istream& in, SignalRecord& signal) {
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::vector<std::string> f = split(line, line.find(',') != std::string::npos ? ',' : '=');
    for (auto& s : f) s = trim(s);
    const std::string& key = f[0];
    if (key == "rpe") {
      if (f.size() != 3) throw DataError("rpe rows need time and value", lineno);
      const long long v = parse_int(f[2], lineno);
      if (v < 6 || v > 20) throw DataError("RPE outside 6..20", lineno);
      signal.rpe_marks.push_back({parse_double(f[1], lineno), static_cast<int>(v)});
      continue;
    }
    if (f.size() != 2) throw DataError("expected key,value", lineno);
    if (key == "sampling_rate") {
      signal.sampling_rate = parse_double(f[1], lineno);
      if (!(signal.sampling_rate > 0.0)) throw DataError("sampling_rate must be positive", lineno);
    } else if (key == "mvc_level") {
      signal.mvc_level = static_cast<int>(parse_int(f[1], lineno));
    } else if (key == "subject_id") {
      signal.subject_id = f[1];
    } else {
      throw DataError("unknown sidecar key '" + key + "'", lineno);
    }
  }
}

void read_sidecar(const std::filesystem::path& path, SignalRecord& signal) {
  auto in = open_in(path);
  read_sidecar(in, signal);
}

void write_sidecar(const SignalRecord& signal, std::ostream& out) {
  out << "sampling_rate," << format_value(signal.sampling_rate) << '\n';
  if (signal.mvc_level) out << "mvc_level," << *signal.mvc_level << '\n';
  if (signal.subject_id) out << "subject_id," << *signal.subject_id << '\n';
  for (const auto& m : signal.rpe_marks) out << "rpe," << format_value(m.time_s) << ',' << m.rpe << '\n';
}

void write_featmap_csv(const FeatureMatrix& m, std::ostream& out) {
  out << "# " << kFeatmapVersion << '\n';
  out << "window_index,channel,start_sample";
  for (const auto& f : feature_table()) out << ',' << f.name;
  out << ",quality_bitmask\n";
  for (const auto& r : m.rows) {
    out << r.window_index << ',' << m.channel_names[static_cast<std::size_t>(r.channel)] << ',' << r.start_sample;
    for (Index i = 0; i < r.values.size(); ++i) out << ',' << format_value(r.values[i]);
    out << ',' << r.quality << '\n';
  }
}

FeatureMatrix read_featmap_csv(std::istream& in) {
  std::string line;
  long lineno = 1;
  if (!std::getline(in, line) || trim(line) != "# " + std::string(kFeatmapVersion))
    throw DataError("missing '# featmap_v1' marker", lineno);
  ++lineno;
  if (!std::getline(in, line)) throw DataError("missing header", lineno);
  const auto header = split(line);
  if (header.size() != kFeatureCount + 4) throw DataError("unexpected featmap column count", lineno);
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (header[i + 3] != feature_table()[i].name) throw DataError("column " + header[i + 3] + " out of canonical order", lineno);

  FeatureMatrix m;
  std::vector<Index> per_channel;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line);
    if (f.size() != header.size()) throw DataError("wrong field count", lineno);
    FeatureVector fv;
    fv.window_index = static_cast<Index>(parse_int(f[0], lineno));
    const std::string& ch = f[1];
    auto it = std::find(m.channel_names.begin(), m.channel_names.end(), ch);
    if (it == m.channel_names.end()) {
      m.channel_names.push_back(ch);
      per_channel.push_back(0);
      it = m.channel_names.end() - 1;
    }
    fv.channel = it - m.channel_names.begin();
    if (fv.window_index != per_channel[static_cast<std::size_t>(fv.channel)]++)
      throw DataError("rows must be channel-major in window order", lineno);
    fv.start_sample = static_cast<Index>(parse_int(f[2], lineno));
    for (std::size_t i = 0; i < kFeatureCount; ++i) fv.values[static_cast<Index>(i)] = parse_double(f[i + 3], lineno);
    fv.quality = static_cast<std::uint64_t>(parse_int(f.back(), lineno));
    m.rows.push_back(fv);
  }
  if (!per_channel.empty()) {
    m.windows_per_channel = per_channel.front();
    for (auto c : per_channel)
      if (c != m.windows_per_channel) throw DataError("channels have different window counts");
  }
  // channel-major ordering check
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    if (m.rows[i].channel != static_cast<Index>(i) / std::max<Index>(1, m.windows_per_channel))
      throw DataError("rows must be channel-major");
  return m;
}

void write_labels_csv(const std::vector<FatigueLabel>& labels, std::ostream& out) {
  out << "window_index,rpe,state\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i].rpe << ',' << to_string(labels[i].state) << '\n';
}

std::vector<FatigueLabel> read_labels_csv(std::istream& in) {
  std::string line;
  long lineno = 1;
  if (!std::getline(in, line) || trim(line) != "window_index,rpe,state") throw DataError("bad labels header", lineno);
  std::vector<FatigueLabel> labels;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line);
    if (f.size() != 3) throw DataError("expected window_index,rpe,state", lineno);
    if (parse_int(f[0], lineno) != static_cast<long long>(labels.size())) throw DataError("window_index out of sequence", lineno);
    const auto rpe = parse_int(f[1], lineno);
    if (rpe < 6 || rpe > 20) throw DataError("RPE outside 6..20", lineno);
    FatigueLabel lab = FatigueLabel::from_rpe(static_cast<int>(rpe));
    const auto state = fatigue_state_from_string(trim(f[2]));
    if (!state || *state != lab.state) throw DataError("state does not match RPE", lineno);
    labels.push_back(lab);
  }
  return labels;
}

void write_trend_csv(const TrendAnalysis& analysis, const FeatureMatrix& m, std::ostream& out) {
  out << "feature,channel,r,slope,intercept,p_value,class\n";
  for (const auto& r : analysis.reports) {
    out << feature_name(r.feature) << ',' << m.channel_names[static_cast<std::size_t>(r.channel)] << ','
        << format_value(r.pearson_r) << ',' << format_value(r.slope) << ',' << format_value(r.intercept) << ','
        << format_value(r.p_value) << ',' << to_string(r.trend_class) << '\n';
  }
}

void write_trend_plot_csv(const FeatureMatrix& m, std::ostream& out) {
  out << "feature,window_index,mean_value,fitted_value\n";
  if (m.windows_per_channel < 3 || m.channel_count() == 0) return;
  for (std::size_t i = 0; i < kGroupedFeatureCount; ++i) {
    const FeatureId id = feature_at(i);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(m.windows_per_channel);
    for (Index c = 0; c < m.channel_count(); ++c) mean += m.trajectory(id, c);
    mean /= static_cast<double>(m.channel_count());
    const TrendReport fit = fit_trend(mean);
    for (Index w = 0; w < m.windows_per_channel; ++w)
      out << feature_name(id) << ',' << w << ',' << format_value(mean[w]) << ','
          << format_value(fit.intercept + fit.slope * static_cast<double>(w)) << '\n';
  }
}

void write_sequences_csv(const SequenceDataset& ds, std::ostream& out) {
  out << "seq_index,window_offset";
  for (auto id : ds.increasing) out << ",inc_" << feature_name(id);
  for (auto id : ds.decreasing) out << ",dec_" << feature_name(id);
  out << ",label\n";
  for (std::size_t s = 0; s < ds.sequences.size(); ++s) {
    const auto& seq = ds.sequences[s];
    for (Index t = 0; t < ds.seq_len; ++t) {
      out << s << ',' << t;
      for (Index j = 0; j < seq.inc.cols(); ++j) out << ',' << format_value(seq.inc(t, j));
      for (Index j = 0; j < seq.dec.cols(); ++j) out << ',' << format_value(seq.dec(t, j));
      out << ',' << static_cast<int>(seq.label.state) << '\n';
    }
  }
}

}  // namespace semg
