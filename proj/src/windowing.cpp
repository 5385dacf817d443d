#include "semg/windowing.hpp"

namespace semg {

WindowView::WindowView(const SignalRecord& parent, Index channel, Index start, Index length)
    : parent_(&parent), channel_(channel), start_(start), length_(length) {
  if (channel < 0 || channel >= parent.channel_count()) throw UsageError("window channel out of range");
  if (start < 0 || length < 0 || start + length > parent.length()) throw UsageError("window exceeds signal");
}

Index window_count(Index n, Index window_len, Index stride) {
  if (window_len < 1 || stride < 1 || n < window_len) return 0;
  return (n - window_len) / stride + 1;
}

std::vector<WindowView> segment_windows(const SignalRecord& signal, const WindowPlan& plan, Index channel,
                                        Diagnostics* diag) {
  plan.validate(signal.sampling_rate);
  const Index len = plan.window_len(signal.sampling_rate);
  const Index stride = plan.stride(signal.sampling_rate);
  const Index count = window_count(signal.length(), len, stride);
  if (count == 0) {
    note(diag, "signal of " + std::to_string(signal.length()) + " samples is shorter than one window of " +
                   std::to_string(len));
  }
  std::vector<WindowView> views;
  views.reserve(static_cast<std::size_t>(count));
  for (Index w = 0; w < count; ++w) views.emplace_back(signal, channel, w * stride, len);
  return views;
}

std::vector<WindowView> segment_windows(const SignalRecord& signal, const WindowPlan& plan, Diagnostics* diag) {
  std::vector<WindowView> views;
  for (Index c = 0; c < signal.channel_count(); ++c) {
    auto ch = segment_windows(signal, plan, c, c == 0 ? diag : nullptr);
    views.insert(views.end(), ch.begin(), ch.end());
  }
  return views;
}

}  // namespace semg
