#pragma once

#include "semg/error.hpp"
#include "semg/signal.hpp"

#include <vector>

namespace semg {

/// Read-only view of one channel's window inside a SignalRecord. Holds a
/// pointer to the parent; no sample data is copied.
class WindowView {
 public:
  WindowView(const SignalRecord& parent, Index channel, Index start, Index length);

  Eigen::Map<const Eigen::VectorXd> samples() const {
    return {parent_->samples.col(channel_).data() + start_, length_};
  }

  const SignalRecord& parent() const noexcept { return *parent_; }
  Index channel_index() const noexcept { return channel_; }
  Index start_sample() const noexcept { return start_; }
  Index length() const noexcept { return length_; }
  double sampling_rate() const noexcept { return parent_->sampling_rate; }

 private:
  const SignalRecord* parent_;
  Index channel_;
  Index start_;
  Index length_;
};

/// floor((n - window_len) / stride) + 1 for n >= window_len, else 0.
Index window_count(Index n, Index window_len, Index stride);

/// Views for one channel, starting at 0, stride, 2*stride, ...
std::vector<WindowView> segment_windows(const SignalRecord& signal, const WindowPlan& plan, Index channel,
                                        Diagnostics* diag = nullptr);

/// Views for every channel, channel-major.
std::vector<WindowView> segment_windows(const SignalRecord& signal, const WindowPlan& plan,
                                        Diagnostics* diag = nullptr);

}  // namespace semg
