#include "semg/trend.hpp"

#include "semg/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace semg {
namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

const char* to_string(TrendClass c) noexcept {
  switch (c) {
    case TrendClass::Increasing: return "Increasing";
    case TrendClass::Decreasing: return "Decreasing";
    case TrendClass::Nonsignificant: return "Nonsignificant";
  }
  return "?";
}

double regularized_incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (x <= 0.0) return 0.0;
  if (one_minus_x <= 0.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(one_minus_x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  return regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t2), t2 / (dof + t2));
}

double pearson_correlation(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw DataError("pearson_correlation: length mismatch");
  if (x.size() < 3) throw DataError("pearson_correlation: need at least 3 samples");
  const Eigen::ArrayXd xc = x.array() - x.mean();
  const Eigen::ArrayXd yc = y.array() - y.mean();
  const double sxx = xc.square().sum();
  const double syy = yc.square().sum();
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateError("pearson_correlation: zero variance");
  return std::clamp((xc * yc).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
}

TrendReport fit_trend(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                      double alpha) {
  if (x.size() != y.size()) throw DataError("fit_trend: length mismatch");
  const Index n = y.size();
  if (n < 3) throw DataError("fit_trend: need at least 3 samples");
  TrendReport rep;
  rep.n = n;
  const double x_mean = x.mean();
  const double y_mean = y.mean();
  const Eigen::ArrayXd xc = x.array() - x_mean;
  const Eigen::ArrayXd yc = y.array() - y_mean;
  const double sxx = xc.square().sum();
  const double syy = yc.square().sum();
  if (!(sxx > 0.0)) throw DegenerateError("fit_trend: regressor has zero variance");
  if (!(syy > 0.0)) {
    rep.intercept = y_mean;
    return rep;
  }
  const double sxy = (xc * yc).sum();
  rep.slope = sxy / sxx;
  rep.intercept = y_mean - rep.slope * x_mean;
  rep.pearson_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double ssr = (yc - rep.slope * xc).square().sum();
  const double dof = static_cast<double>(n - 2);
  if (!(ssr > 0.0)) {
    rep.p_value = rep.slope == 0.0 ? 1.0 : 0.0;
  } else {
    const double se = std::sqrt(ssr / dof / sxx);
    rep.p_value = student_t_two_sided_p(rep.slope / se, dof);
  }
  if (rep.p_value < alpha && rep.slope > 0.0)
    rep.trend_class = TrendClass::Increasing;
  else if (rep.p_value < alpha && rep.slope < 0.0)
    rep.trend_class = TrendClass::Decreasing;
  return rep;
}

TrendReport fit_trend(const Eigen::Ref<const Eigen::VectorXd>& y, double alpha) {
  const Eigen::VectorXd idx = Eigen::VectorXd::LinSpaced(y.size(), 0.0, static_cast<double>(y.size() - 1));
  return fit_trend(idx, y, alpha);
}

TrendClass FeatureGroups::class_of(FeatureId id) const {
  for (auto f : increasing)
    if (f == id) return TrendClass::Increasing;
  for (auto f : decreasing)
    if (f == id) return TrendClass::Decreasing;
  return TrendClass::Nonsignificant;
}

FeatureGroups table_groups() {
  FeatureGroups g;
  for (const auto& info : feature_table()) {
    if (info.table_group == TableGroup::Increasing) g.increasing.push_back(info.id);
    if (info.table_group == TableGroup::Decreasing) g.decreasing.push_back(info.id);
  }
  return g;
}

TrendAnalysis group_features(const FeatureMatrix& matrix, const std::optional<Eigen::VectorXd>& regressor,
                             double alpha) {
  const Index windows = matrix.windows_per_channel;
  if (windows < 3) throw DataError("trend analysis needs at least 3 windows");
  if (regressor && regressor->size() != windows) throw DataError("regressor length does not match window count");
  const Eigen::VectorXd x =
      regressor ? *regressor : Eigen::VectorXd::LinSpaced(windows, 0.0, static_cast<double>(windows - 1));

  TrendAnalysis out;
  for (std::size_t i = 0; i < kGroupedFeatureCount; ++i) {
    const FeatureId id = feature_at(i);
    std::array<int, 3> votes{0, 0, 0};
    for (Index c = 0; c < matrix.channel_count(); ++c) {
      TrendReport rep = fit_trend(x, matrix.trajectory(id, c), alpha);
      rep.feature = id;
      rep.channel = c;
      ++votes[static_cast<std::size_t>(rep.trend_class)];
      out.reports.push_back(rep);
    }
    const int inc = votes[0], dec = votes[1], non = votes[2];
    if (inc > dec && inc > non)
      out.groups.increasing.push_back(id);
    else if (dec > inc && dec > non)
      out.groups.decreasing.push_back(id);
    else
      out.groups.nonsignificant.push_back(id);
  }
  return out;
}

}  // namespace semg
