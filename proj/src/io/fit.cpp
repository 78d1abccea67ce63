#include "bpc/io/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "bpc/error.hpp"

namespace bpc::io {

KinkedFit fit_kinked_line(const GapSeries& gaps, bool kink_at_origin) {
  KinkedFit fit{};
  fit.kink_at_origin = kink_at_origin;
  for (const auto& g : gaps) {
    if (!std::isfinite(g.tightness_gap) || !std::isfinite(g.inflation_gap)) {
      throw Error(ErrorKind::invalid_series, "non-finite gap at " + g.date.to_string());
    }
    if (g.tightness_gap > 0.0) ++fit.n_tight;
    if (g.tightness_gap < 0.0) ++fit.n_slack;
  }
  if (fit.n_tight < 3 || fit.n_slack < 3) {
    throw Error(ErrorKind::insufficient_data,
                "kinked fit needs at least 3 points on each side of zero tightness gap (have " +
                    std::to_string(fit.n_tight) + " tight, " + std::to_string(fit.n_slack) +
                    " slack)");
  }

  if (kink_at_origin) {
    // The two regressors have disjoint support, so each slope is a separate
    // regression through the origin.
    double sxy_t = 0.0, sxx_t = 0.0, sxy_s = 0.0, sxx_s = 0.0;
    for (const auto& g : gaps) {
      const double x = g.tightness_gap;
      const double y = g.inflation_gap;
      if (x > 0.0) {
        sxy_t += x * y;
        sxx_t += x * x;
      } else if (x < 0.0) {
        sxy_s += x * y;
        sxx_s += x * x;
      }
    }
    fit.slope_tight = sxy_t / sxx_t;
    fit.slope_slack = sxy_s / sxx_s;
    fit.intercept = 0.0;
  } else {
    const auto n = static_cast<Eigen::Index>(gaps.size());
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double x = gaps[static_cast<std::size_t>(k)].tightness_gap;
      X(k, 0) = 1.0;
      X(k, 1) = std::max(x, 0.0);
      X(k, 2) = std::min(x, 0.0);
      y(k) = gaps[static_cast<std::size_t>(k)].inflation_gap;
    }
    const Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
    fit.intercept = beta(0);
    fit.slope_tight = beta(1);
    fit.slope_slack = beta(2);
  }

  double mean_y = 0.0;
  for (const auto& g : gaps) mean_y += g.inflation_gap;
  mean_y /= static_cast<double>(gaps.size());
  double sst = 0.0;
  for (const auto& g : gaps) {
    const double x = g.tightness_gap;
    const double slope = x > 0.0 ? fit.slope_tight : fit.slope_slack;
    const double r = g.inflation_gap - (fit.intercept + slope * x);
    fit.ssr += r * r;
    sst += (g.inflation_gap - mean_y) * (g.inflation_gap - mean_y);
  }
  fit.rmse = std::sqrt(fit.ssr / static_cast<double>(gaps.size()));
  fit.r_squared = sst > 0.0 ? 1.0 - fit.ssr / sst : 1.0;
  fit.steeper_when_tight = std::abs(fit.slope_tight) > std::abs(fit.slope_slack);
  return fit;
}

}  // namespace bpc::io
