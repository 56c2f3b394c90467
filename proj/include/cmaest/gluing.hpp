#pragma once

// Smooth gluing of two convex (or radially plurisubharmonic) pieces defined on
// disjoint intervals, built from a mollified absolute value.

#include <memory>

#include "cmaest/numgrid.hpp"

namespace cmaest::gluing {

/// Upper bound for ε·ρ_ε″ carried into the certified second-derivative bounds.
inline constexpr double kM = 3.0;

/// Standard bump exp(−1/(1−x²)) on (−1, 1), normalized to unit mass.
double bump(double x);

/// ∫_{−1}^{1} exp(−1/(1−x²)) dx.
double bump_normalizer();

/// ∫_{−1}^{x} of the normalized bump: a C^∞ step from 0 (x ≤ −1) to 1 (x ≥ 1),
/// with its first two derivatives.
numgrid::Jet smoothstep(double x);

/// |t| convolved with the bump scaled to radius ε. Equals |t| for |t| ≥ ε, is
/// even, and has ρ″ = 2·(scaled bump). Throws NonPositiveEps.
class Regularizer {
 public:
  explicit Regularizer(double eps);
  double eps() const { return eps_; }
  numgrid::Jet jet(double t) const;
  numgrid::SmoothFn fn() const;

 private:
  double eps_;
};

numgrid::SmoothFn rho_eps(double eps);

enum class Mode { StrictlyConvex, Convex, RadialPsh };

/// Pieces f on [a₁,b₁] and g on [a₂,b₂] with a₁ < b₁ < a₂ < b₂. The pieces'
/// eval must also work slightly outside their intervals (the δ-neighbourhoods).
/// `n` is the complex dimension used for determinant bounds in radial mode.
struct GlueProblem {
  numgrid::SmoothFn left;
  numgrid::SmoothFn right;
  Mode mode = Mode::StrictlyConvex;
  int n = 2;

  GlueProblem(numgrid::SmoothFn left_, numgrid::SmoothFn right_, Mode mode_, int n_ = 2);
  double a1() const { return left.domain.lo; }
  double b1() const { return left.domain.hi; }
  double a2() const { return right.domain.lo; }
  double b2() const { return right.domain.hi; }
};

/// F(s) = f(eˢ) on [log a, log b].
numgrid::SmoothFn log_transform(const numgrid::SmoothFn& f);

/// The radial problem rewritten on (F, G) in strictly convex mode; other modes unchanged.
GlueProblem convex_form(const GlueProblem& problem);

struct Compatibility {
  double lhs = 0.0;  // f′(b₁), or b₁f′(b₁) in radial mode
  double mid = 0.0;  // (g(a₂)−f(b₁))/(a₂−b₁), or over log a₂ − log b₁
  double rhs = 0.0;  // g′(a₂), or a₂g′(a₂)
  bool ok = false;
};

Compatibility compatibility(const GlueProblem& problem);

struct DeltaChoice {
  double delta = 0.0;
  int j = 0;  // delta = (a₂−b₁)/2^j
};

/// Largest (a₂−b₁)/2^j, j = 2..60, meeting the δ-conditions for the given c
/// (c = 0 selects the convex-mode system). Radial problems must be passed in
/// convex_form. Throws DeltaSearchFailed.
DeltaChoice delta_search(const GlueProblem& problem, double c);

struct GlueResult {
  /// The glued function: on ℝ for the convex modes, on (0, ∞) in the variable
  /// t = |z|² for radial mode.
  numgrid::SmoothFn h{numgrid::Interval(0.0, 1.0), {}};
  /// The convex function actually constructed: h itself, or H with h(t) = H(log t).
  numgrid::SmoothFn H{numgrid::Interval(0.0, 1.0), {}};
  Mode mode = Mode::StrictlyConvex;
  Compatibility chain;
  double alpha1 = 0.0;  // min f″ (of F″ in radial mode) on the left piece
  double alpha2 = 0.0;
  double sup_f2 = 0.0;  // sup f″ on the left piece
  double sup_g2 = 0.0;
  double c = 0.0;
  DeltaChoice delta;
  double eps = 0.0;
  numgrid::Interval working{0.0, 1.0};  // interval of H scanned for inf/sup
  double inf_bound = 0.0;               // certified lower bound for inf H″
  double sup_bound = 0.0;               // certified upper bound for sup H″
  double inf_h2 = 0.0;                  // measured on the working interval
  double sup_h2 = 0.0;
  double arg_inf_h2 = 0.0;
  double arg_sup_h2 = 0.0;
  // Radial mode: det of the complex Hessian of h(|z|²) on b₁ < t < a₂.
  double det_bound = 0.0;
  double det_sup = 0.0;
  double arg_det_sup = 0.0;
  double min_h1 = 0.0;  // min h′ on [a₁, b₂] (radial mode)
  bool ok = false;      // measured values respect the certified bounds
};

/// Builds h. Throws IncompatiblePieces, NotStrictlyConvexPiece, DeltaSearchFailed
/// or DerivativeMismatch (inconsistent piece derivatives).
GlueResult glue(const GlueProblem& problem, std::size_t probes = 16385);

}  // namespace cmaest::gluing
