#pragma once

#include "semg/features.hpp"

#include <optional>
#include <vector>

namespace semg {

enum class TrendClass { Increasing, Decreasing, Nonsignificant };
const char* to_string(TrendClass c) noexcept;

struct TrendReport {
  FeatureId feature = FeatureId::AEMG;
  Index channel = 0;
  double pearson_r = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double p_value = 1.0;  // two-sided, slope t-test with n - 2 dof
  TrendClass trend_class = TrendClass::Nonsignificant;
  Index n = 0;
};

inline constexpr double kTrendAlpha = 0.05;

/// Regularized incomplete beta I_x(a, b); `one_minus_x` avoids cancellation near x = 1.
double regularized_incomplete_beta(double a, double b, double x, double one_minus_x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

/// Product-moment correlation. Throws DegenerateError on zero variance and
/// DataError on length mismatch or n < 3.
double pearson_correlation(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y);

/// OLS fit of y against x. A constant y yields slope 0 and Nonsignificant.
TrendReport fit_trend(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y,
                      double alpha = kTrendAlpha);

/// OLS fit against the window index 0..n-1.
TrendReport fit_trend(const Eigen::Ref<const Eigen::VectorXd>& y, double alpha = kTrendAlpha);

enum class GroupingMode { Empirical, Table };

/// Partition of the 34 grouped descriptors, each list in canonical order.
struct FeatureGroups {
  std::vector<FeatureId> increasing;
  std::vector<FeatureId> decreasing;
  std::vector<FeatureId> nonsignificant;

  TrendClass class_of(FeatureId id) const;
};

/// The fixed published grouping: 19 increasing, 15 decreasing.
FeatureGroups table_groups();

struct TrendAnalysis {
  std::vector<TrendReport> reports;  // feature-major, then channel
  FeatureGroups groups;
};

/// Fits every grouped descriptor per channel, then takes a majority vote
/// across channels; a tie for the top class is Nonsignificant. `regressor`
/// (e.g. per-window RPE) replaces the window index when given.
TrendAnalysis group_features(const FeatureMatrix& matrix, const std::optional<Eigen::VectorXd>& regressor = std::nullopt,
                             double alpha = kTrendAlpha);

}  // namespace semg
