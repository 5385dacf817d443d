#include "semg/engine.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace semg {
namespace {

std::string cpu_model_name() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) return line.substr(line.find_first_not_of(" \t", colon + 1));
    }
  }
  return "unknown";
}

}  // namespace

BenchmarkReport benchmark_engine(const SignalRecord& signal, const WindowPlan& plan, const EngineConfig& cfg,
                                 std::span<const unsigned> thread_counts, int repeats) {
  if (thread_counts.empty()) throw ConfigError("benchmark needs at least one thread count");
  if (repeats < 1) throw ConfigError("benchmark needs at least one repeat");

  BenchmarkReport report;
  report.hardware_threads = std::thread::hardware_concurrency();
  report.cpu_model = cpu_model_name();

  // determinism gate
  FeatureMatrix reference;
  for (std::size_t i = 0; i < thread_counts.size(); ++i) {
    EngineConfig c = cfg;
    c.thread_count = thread_counts[i];
    FeatureMatrix m = extract_features(signal, plan, c);
    if (i == 0) {
      reference = std::move(m);
      continue;
    }
    if (!bit_identical(reference, m))
      throw std::runtime_error("feature output differs between " + std::to_string(thread_counts[0]) + " and " +
                               std::to_string(thread_counts[i]) + " threads");
  }
  report.windows = static_cast<Index>(reference.rows.size());
  report.checksum = checksum(reference);

  for (unsigned threads : thread_counts) {
    EngineConfig c = cfg;
    c.thread_count = threads;
    BenchmarkRow row;
    row.threads = threads;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const FeatureMatrix m = extract_features(signal, plan, c);
      const auto t1 = std::chrono::steady_clock::now();
      row.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    const auto [lo, hi] = std::minmax_element(row.seconds.begin(), row.seconds.end());
    row.best_seconds = *lo;
    row.spread = *lo > 0.0 ? (*hi - *lo) / *lo : 0.0;
    row.unstable = row.spread > 0.20;
    row.windows_per_sec = static_cast<double>(report.windows) / row.best_seconds;
    report.rows.push_back(std::move(row));
  }
  for (auto& row : report.rows) row.speedup = row.windows_per_sec / report.rows.front().windows_per_sec;
  return report;
}

std::string BenchmarkReport::to_text() const {
  std::ostringstream os;
  os << "cpu: " << cpu_model << " (" << hardware_threads << " hardware threads)\n";
  os << "work items: " << windows << "\n";
  os << "checksum: " << std::hex << checksum << std::dec << "\n";
  for (const auto& r : rows) {
    os << "threads=" << r.threads << " best=" << r.best_seconds << "s windows/s=" << r.windows_per_sec
       << " speedup=" << r.speedup << "x spread=" << r.spread * 100.0 << "%" << (r.unstable ? " UNSTABLE" : "")
       << "\n";
  }
  return os.str();
}

std::string BenchmarkReport::to_key_values() const {
  std::ostringstream os;
  os << "cpu_model=" << cpu_model << "\n";
  os << "hardware_threads=" << hardware_threads << "\n";
  os << "windows=" << windows << "\n";
  os << "checksum=" << std::hex << checksum << std::dec << "\n";
  for (const auto& r : rows) {
    const std::string p = "threads." + std::to_string(r.threads) + ".";
    os << p << "windows_per_sec=" << r.windows_per_sec << "\n";
    os << p << "speedup=" << r.speedup << "\n";
    os << p << "best_seconds=" << r.best_seconds << "\n";
    os << p << "unstable=" << (r.unstable ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace semg
