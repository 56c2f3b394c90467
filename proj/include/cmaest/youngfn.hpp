#pragma once

// The Young-function family Φ_{p,q,r}(t) = t^p log^q(1+t) log^r(1+log(1+t)).

#include <vector>

#include "cmaest/numgrid.hpp"

namespace cmaest::youngfn {

struct YoungParams {
  double p = 1.0;
  double q = 0.0;
  double r = 0.0;

  YoungParams() = default;
  YoungParams(double p_, double q_, double r_);

  /// (p−1)² + q² + r² > 0, i.e. Φ is not the identity.
  bool nonlinear() const { return (p - 1.0) * (p - 1.0) + q * q + r * r > 0.0; }
  /// q² + r² > 0, the hypothesis for strict convexity of Φ(t^{1/p}).
  bool has_log_factor() const { return q * q + r * r > 0.0; }
};

double phi(const YoungParams& params, double t);
double phi_d1(const YoungParams& params, double t);
double phi_d2(const YoungParams& params, double t);

/// Φ(t^{1/p}) and its second derivative in t.
double phi_composed(const YoungParams& params, double t);
double phi_composed_d2(const YoungParams& params, double t);

/// η(t) = t^{p−1} log^q(1+t) log^r(1+log(1+t)), the derivative-like weight of
/// the Young pairing.
double eta(const YoungParams& params, double t);

/// Φ as a SmoothFn on the given interval (t > 0).
numgrid::SmoothFn phi_fn(const YoungParams& params, const numgrid::Interval& domain);

struct ConvexityReport {
  double min_phi_d2 = 0.0;
  double argmin_phi_d2 = 0.0;
  double min_composed_d2 = 0.0;  // meaningful only when composed_checked
  double argmin_composed_d2 = 0.0;
  bool composed_checked = false;
  std::vector<double> violations;  // nodes where a checked second derivative is ≤ 0
  double excluded_below = 0.0;     // grid nodes below this were skipped (claim is on (0,∞))
  bool ok = false;
};

/// Minimum of Φ'' and (when q²+r²>0) of d²/dt²[Φ(t^{1/p})] over the grid.
/// Nodes ≤ 0 are excluded. DegenerateParams when (p,q,r) = (1,0,0).
ConvexityReport check_strict_convexity(const YoungParams& params,
                                       const numgrid::WeightedMeasure& grid);

/// sup over grid nodes t > 0 of Φ(2t)/Φ(t).
double delta2_constant(const YoungParams& params, const numgrid::WeightedMeasure& grid);

/// 2^{p+q+r}, the global Δ₂ bound.
double delta2_bound(const YoungParams& params);

}  // namespace cmaest::youngfn
