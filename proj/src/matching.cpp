#include "bpc/matching.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "bpc/error.hpp"
#include "root_finding.hpp"

namespace bpc {
namespace {

void require_lower(double theta, const MatchingParams& p) {
  validate(p);
  const double lower = lower_tightness_bound(p);
  if (!(theta >= lower) || !std::isfinite(theta)) {
    throw Error(ErrorKind::out_of_range,
                "tightness " + std::to_string(theta) +
                    " is below the lower bound " + std::to_string(lower));
  }
}

void require_bracketed(double theta, const MatchingParams& p) {
  require_lower(theta, p);
  const double upper = upper_tightness_bound(p);
  if (!(theta < upper)) {
    throw Error(ErrorKind::out_of_range,
                "tightness " + std::to_string(theta) +
                    " is at or above the upper bound " + std::to_string(upper));
  }
}

void require_unemployment(double u) {
  if (!(u > 0.0 && u <= 0.5)) {
    throw Error(ErrorKind::out_of_range,
                "unemployment rate " + std::to_string(u) + " outside (0, 1/2]");
  }
}

}  // namespace

void validate(const MatchingParams& p) {
  if (!(p.s > 0.0) || !(p.omega > 0.0) || !std::isfinite(p.s) ||
      !std::isfinite(p.omega)) {
    throw Error(ErrorKind::invalid_params,
                "matching parameters must be positive and finite");
  }
  if (!(p.omega > 2.0 * p.s)) {
    throw Error(ErrorKind::invalid_params,
                "matching efficacy must exceed twice the separation rate (omega=" +
                    std::to_string(p.omega) + ", s=" + std::to_string(p.s) + ")");
  }
}

double lower_tightness_bound(const MatchingParams& p) {
  validate(p);
  const double r = efficient_rate(p);
  return 4.0 * r * r;
}

double upper_tightness_bound(const MatchingParams& p) {
  const double lower = lower_tightness_bound(p);
  // lower / (1 - sqrt(1 - lower))^2 rewritten without the cancellation in
  // 1 - sqrt(1 - lower) for small lower bounds.
  const double root = 1.0 + std::sqrt(1.0 - lower);
  return root * root / lower;
}

TightnessBounds tightness_bounds(const MatchingParams& p) {
  return {lower_tightness_bound(p), upper_tightness_bound(p)};
}

double customer_finding_rate(double theta, const MatchingParams& p) {
  require_lower(theta, p);
  return p.omega * std::sqrt(theta) - p.s;
}

double worker_finding_rate(double theta, const MatchingParams& p) {
  require_lower(theta, p);
  return p.omega / std::sqrt(theta) - p.s / theta;
}

double unemployment_rate(double theta, const MatchingParams& p) {
  require_lower(theta, p);
  return efficient_rate(p) / std::sqrt(theta);
}

double recruiting_rate(double theta, const MatchingParams& p) {
  require_lower(theta, p);
  return efficient_rate(p) * std::sqrt(theta);
}

double recruiter_producer_ratio(double theta, const MatchingParams& p) {
  require_bracketed(theta, p);
  const double q = p.omega / std::sqrt(theta) - p.s / theta;
  if (!(q > p.s)) {
    throw Error(ErrorKind::out_of_range,
                "worker-finding rate does not exceed the separation rate");
  }
  return p.s / (q - p.s);
}

LaborMarketState labor_market_state(double theta, const MatchingParams& p) {
  return {theta, unemployment_rate(theta, p), recruiting_rate(theta, p)};
}

double tightness_from_unemployment(double u, const MatchingParams& p) {
  validate(p);
  require_unemployment(u);
  const double ratio = efficient_rate(p) / u;
  return ratio * ratio;
}

double beveridge_v_of_u(double u, const MatchingParams& p) {
  validate(p);
  require_unemployment(u);
  const double r = efficient_rate(p);
  return r * r / u;
}

double recruiter_producer_from_u(double u, const MatchingParams& p) {
  const double v = beveridge_v_of_u(u, p);
  const double producers = 1.0 - u - v;
  if (!(producers > 0.0)) {
    throw Error(ErrorKind::infeasible,
                "u + v(u) >= 1 at u = " + std::to_string(u));
  }
  return v / producers;
}

double min_feasible_unemployment(const MatchingParams& p) {
  validate(p);
  // Smaller root of u^2 - u + (s/omega)^2 = 0, written stably.
  const double r = efficient_rate(p);
  const double c = r * r;
  return 2.0 * c / (1.0 + std::sqrt(1.0 - 4.0 * c));
}

Elasticities elasticities(double theta, const MatchingParams& p) {
  const double tau = recruiter_producer_ratio(theta, p);
  const double u = unemployment_rate(theta, p);
  const double v = recruiting_rate(theta, p);
  Elasticities e{};
  e.finding = 0.5 / (1.0 - u);
  e.worker_finding = -(0.5 - u) / (1.0 - u);
  e.unemployment = -0.5;
  e.recruiter_ratio = 0.5 * (1.0 - 2.0 * u) / (1.0 - u - v);
  e.demand = -(1.0 - u) / (tau * (0.5 - u));
  return e;
}

TightnessRegime tightness_regime(double u, double v) {
  if (v > u) return TightnessRegime::inefficiently_tight;
  if (v < u) return TightnessRegime::inefficiently_slack;
  return TightnessRegime::efficient;
}

Allocation efficient_allocation(const MatchingParams& p) {
  validate(p);
  const double r = efficient_rate(p);
  return {r, r, 1.0, TightnessRegime::efficient};
}

double demand_tightness(double p_own, double p_agg, double theta_agg,
                        const MatchingParams& p) {
  const double tau_agg = recruiter_producer_ratio(theta_agg, p);
  if (!(p_agg > 0.0) || !std::isfinite(p_agg)) {
    throw Error(ErrorKind::out_of_range, "aggregate price must be positive");
  }
  const double choke = p_agg * (1.0 + tau_agg);
  if (!(p_own > 0.0 && p_own < choke)) {
    throw Error(ErrorKind::out_of_range,
                "own price " + std::to_string(p_own) + " outside (0, " +
                    std::to_string(choke) + ")");
  }
  if (p_own == p_agg) return theta_agg;

  const double target = (p_agg / p_own) * (1.0 + tau_agg) - 1.0;
  if (!std::isfinite(target) || target < 0.0) {
    throw Error(ErrorKind::no_solution, "implied recruiter-producer ratio is not finite and positive");
  }
  const auto [lower, upper] = tightness_bounds(p);
  const double hi = upper - 1e-9 * upper;
  const auto excess = [&](double theta) {
    return recruiter_producer_ratio(theta, p) - target;
  };
  if (excess(lower) > 0.0) {
    throw Error(ErrorKind::no_solution,
                "price too high: implied tightness falls below the lower bound");
  }
  if (excess(hi) <= 0.0) return hi;
  return detail::bisect_root(excess, lower, hi);
}

}  // namespace bpc
