#include "semg/engine.hpp"

#include <bit>
#include <cstring>
#include <exception>
#include <thread>

namespace semg {

FeatureMatrix extract_features(const SignalRecord& signal, const WindowPlan& plan, const EngineConfig& cfg,
                               Diagnostics* diag) {
  signal.validate();
  plan.validate(signal.sampling_rate);
  cfg.validate();

  FeatureMatrix m;
  m.channel_names = signal.channels;
  const Index len = plan.window_len(signal.sampling_rate);
  const Index stride = plan.stride(signal.sampling_rate);
  m.windows_per_channel = window_count(signal.length(), len, stride);
  const Index items = m.windows_per_channel * signal.channel_count();
  if (items == 0) {
    note(diag, "no windows: signal of " + std::to_string(signal.length()) + " samples, window of " +
                   std::to_string(len));
    return m;
  }
  m.rows.resize(static_cast<std::size_t>(items));

  const auto threads = static_cast<Index>(std::min<std::size_t>(cfg.resolved_threads(), static_cast<std::size_t>(items)));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  auto work = [&](Index t) {
    try {
      const Index begin = items * t / threads;
      const Index end = items * (t + 1) / threads;
      for (Index item = begin; item < end; ++item) {
        const Index channel = item / m.windows_per_channel;
        const Index w = item % m.windows_per_channel;
        FeatureVector fv = compute_window_features(WindowView(signal, channel, w * stride, len), cfg);
        fv.window_index = w;
        m.rows[static_cast<std::size_t>(item)] = fv;
      }
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (Index t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return m;
}

std::uint64_t checksum(const FeatureMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& r : m.rows) {
    mix(static_cast<std::uint64_t>(r.window_index));
    mix(static_cast<std::uint64_t>(r.channel));
    for (Index i = 0; i < r.values.size(); ++i) mix(std::bit_cast<std::uint64_t>(r.values[i]));
    mix(r.quality);
  }
  return h;
}

bool bit_identical(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.windows_per_channel != b.windows_per_channel) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.window_index != y.window_index || x.channel != y.channel || x.start_sample != y.start_sample ||
        x.quality != y.quality)
      return false;
    if (std::memcmp(x.values.data(), y.values.data(), sizeof(double) * kFeatureCount) != 0) return false;
  }
  return true;
}

}  // namespace semg
