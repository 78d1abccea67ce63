#pragma once

// Labor-market matching primitives for the square-root matching function
// h(U, V) = omega * sqrt(U V) - s U.  All rates are per year.

namespace bpc {

struct MatchingParams {
  double s = 0.04;      // job-separation rate
  double omega = 1.0;   // matching efficacy
};

/// Throws Error{invalid_params} unless s > 0, omega > 0 and omega > 2 s.
void validate(const MatchingParams& p);

/// s / omega, the ratio that fixes the whole Beveridge geometry.
inline double efficient_rate(const MatchingParams& p) { return p.s / p.omega; }

struct TightnessBounds {
  double lower;  // f(lower) = s
  double upper;  // q(upper) = s
};

enum class TightnessRegime { inefficiently_slack, efficient, inefficiently_tight };

struct LaborMarketState {
  double theta;
  double u;
  double v;
};

struct Allocation {
  double u_star;
  double v_star;
  double theta_star;
  TightnessRegime tightness_regime;
};

struct Elasticities {
  double finding;          // d ln f / d ln theta
  double worker_finding;   // d ln q / d ln theta
  double unemployment;     // d ln u / d ln theta, always -1/2
  double recruiter_ratio;  // d ln tau / d ln theta
  double demand;           // d ln theta_j / d ln p_j at theta_j = theta
};

double lower_tightness_bound(const MatchingParams& p);
double upper_tightness_bound(const MatchingParams& p);
TightnessBounds tightness_bounds(const MatchingParams& p);

// Functions of tightness.  Each rejects theta below the lower bound with
// Error{out_of_range}; the recruiter-producer ratio also rejects theta at or
// above the upper bound, where it has a pole.
double customer_finding_rate(double theta, const MatchingParams& p);
double worker_finding_rate(double theta, const MatchingParams& p);
double unemployment_rate(double theta, const MatchingParams& p);
double recruiting_rate(double theta, const MatchingParams& p);
double recruiter_producer_ratio(double theta, const MatchingParams& p);
LaborMarketState labor_market_state(double theta, const MatchingParams& p);

/// Inverse of the unemployment rate: theta = ((s/omega) / u)^2.
double tightness_from_unemployment(double u, const MatchingParams& p);

// Beveridge curve v(u) = (s/omega)^2 / u on u in (0, 1/2].
double beveridge_v_of_u(double u, const MatchingParams& p);

/// tau(u) = v(u) / (1 - u - v(u)); Error{infeasible} when u + v(u) >= 1.
double recruiter_producer_from_u(double u, const MatchingParams& p);

/// Smallest unemployment rate with u + v(u) < 1, i.e. u(upper bound).
double min_feasible_unemployment(const MatchingParams& p);

Elasticities elasticities(double theta, const MatchingParams& p);

TightnessRegime tightness_regime(double u, double v);
Allocation efficient_allocation(const MatchingParams& p);

/// Local tightness faced by a seller charging p_own when the aggregate price
/// is p_agg and aggregate tightness theta_agg:
///   theta_j = tau^{-1}((p_agg / p_own) (1 + tau(theta_agg)) - 1).
/// tau is inverted by bisection on [lower, upper - 1e-9 upper]; targets
/// beyond the clamp return the clamp.
double demand_tightness(double p_own, double p_agg, double theta_agg,
                        const MatchingParams& p);

}  // namespace bpc
