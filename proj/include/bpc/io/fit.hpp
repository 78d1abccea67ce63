#pragma once

#include "bpc/io/series.hpp"

namespace bpc::io {

/// Piecewise-linear fit of inflation gap on tightness gap with a kink at
/// zero tightness gap: y = a + b_tight max(x, 0) + b_slack min(x, 0).
struct KinkedFit {
  double slope_tight;
  double slope_slack;
  double intercept;  // zero when the line is forced through the origin
  bool kink_at_origin;
  int n_tight;  // points with x > 0
  int n_slack;  // points with x < 0
  double ssr;
  double rmse;
  double r_squared;
  bool steeper_when_tight;
};

/// Points with a tightness gap of exactly zero carry no slope information
/// but still enter the residuals. Throws Error{insufficient_data} when
/// either side has fewer than three points.
KinkedFit fit_kinked_line(const GapSeries& gaps, bool kink_at_origin = true);

}  // namespace bpc::io
