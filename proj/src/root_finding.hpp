#pragma once

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

#include "bpc/error.hpp"

namespace bpc::detail {

/// Bisection on a sign-changing bracket, run until the bracket cannot shrink
/// further in double precision. Returns the midpoint of the final bracket.
template <class F>
double bisect_root(F f, double lo, double hi) {
  const auto converged = [](double a, double b) {
    const double mid = 0.5 * (a + b);
    return mid <= std::min(a, b) || mid >= std::max(a, b) ||
           std::abs(b - a) <= 2.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(a), std::abs(b));
  };
  std::uintmax_t max_iter = 2000;
  try {
    const auto [a, b] = boost::math::tools::bisect(f, lo, hi, converged, max_iter);
    return 0.5 * (a + b);
  } catch (const boost::math::evaluation_error& e) {
    throw Error(ErrorKind::no_solution, e.what());
  }
}

}  // namespace bpc::detail
