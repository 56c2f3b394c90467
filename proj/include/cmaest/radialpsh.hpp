#pragma once

// Complex Hessians of radial potentials f(|z|²) on ℂⁿ, the Fubini–Study chart,
// and the family f_ε / v_ε with bounded entropy but unbounded oscillation.

#include <vector>

#include "cmaest/gluing.hpp"
#include "cmaest/numgrid.hpp"

namespace cmaest::radialpsh {

/// Coefficient log2/2 in front of f_ε.
inline constexpr double kFepsScale = 0.34657359027997265470861606072908828;

/// Gluing band of v_ε in t = |z|²: pieces [1/64, 1/16] and [1, 4].
inline constexpr double kInnerLo = 1.0 / 64.0;
inline constexpr double kInnerHi = 1.0 / 16.0;
inline constexpr double kOuterLo = 1.0;
inline constexpr double kOuterHi = 4.0;

/// Radial potential f(t), t = |z|², on ℂⁿ.
struct RadialProfile {
  int n = 2;
  numgrid::SmoothFn fn;

  RadialProfile(int n_, numgrid::SmoothFn fn_);
};

struct HessianSpectrum {
  double lam_small = 0.0;  // f′(t), multiplicity n−1
  double lam_big = 0.0;    // f′(t) + t f″(t)
  double det = 0.0;
};

/// Eigenvalues of D²_ℂ f(|z|²) at |z|² = t. OutOfDomain outside fn's domain.
HessianSpectrum hessian_spectrum(const RadialProfile& p, double t);

/// det from a jet: f′^{n−1}(f′ + t f″).
double radial_det(int n, double t, const numgrid::Jet& j);

struct PshReport {
  double min_small = 0.0;
  double arg_small = 0.0;
  double min_big = 0.0;
  double arg_big = 0.0;
  bool strictly_psh = false;
};

PshReport psh_check(const RadialProfile& p, const numgrid::WeightedMeasure& grid);

/// log(1+t) and its derivatives.
numgrid::SmoothFn fubini_study(const numgrid::Interval& domain);

struct CounterexampleParams {
  double eps = 1.0 / 32.0;
  int n = 2;

  CounterexampleParams() = default;
  CounterexampleParams(double eps_, int n_);
};

/// f_ε(t) = −κ log(1+log(1+log(1+log(1+1/(t+ε))))) with coefficient κ and its
/// first two derivatives, for any t > −ε. κ = log2/2 by default; κ = 1 gives
/// the normalization without the coefficient.
numgrid::Jet f_eps_jet(double eps, double t, double kappa = kFepsScale);

/// f′ + t f″ computed without cancellation.
double f_eps_big(double eps, double t, double kappa = kFepsScale);

/// Checked evaluations on t ∈ [0, 1/4]; OutOfDomain otherwise.
double f_eps(const CounterexampleParams& params, double t);
double f_eps_d1(const CounterexampleParams& params, double t);
double f_eps_d2(const CounterexampleParams& params, double t);

/// f_ε as a SmoothFn on `domain` (evaluation is valid for any t > −ε).
numgrid::SmoothFn f_eps_fn(double eps, const numgrid::Interval& domain,
                           double kappa = kFepsScale);

struct FepsBounds {
  double sup_big = 0.0;  // sup over [t0, 1/4] of f′ + t f″
  double arg_sup_big = 0.0;
  double integral = 0.0;  // ∫₀^{1/4} t^{n−1} F logⁿ(1+F) log^{n−1}(1+log(1+F)) dt
  double min_d1 = 0.0;    // min over the quadrature nodes of f′
  double min_big = 0.0;   // and of f′ + t f″
  bool finite = false;
};

/// Bounds on f_ε in the normalization without the log2/2 coefficient, with
/// F = f′^{n−1}(f′ + t f″).
FepsBounds f_eps_bounds(const CounterexampleParams& params, double t0);

/// Quadrature on [0, hi] with panels halving toward 0 down to ε·2^{−14}.
numgrid::WeightedMeasure eps_refined_measure(double eps, double hi, int order = 16);

struct Seam {
  double t = 0.0;
  double dv = 0.0;  // |left − right| for value, first and second derivative
  double d1 = 0.0;
  double d2 = 0.0;
};

struct VEps {
  CounterexampleParams params;
  gluing::GlueResult glue;
  RadialProfile profile;  // v_ε(t) on [0, 1e12]
  Seam inner;             // t = 1/16
  Seam outer;             // t = 1
};

/// v_ε = f_ε on [0, 1/16], the radial gluing of f_ε|[1/64,1/16] and log(1+t)|[1,4]
/// on (1/16, 1), log(1+t) on [1, ∞).
VEps build_v_eps(const CounterexampleParams& params);

/// π^n/(n−1)!: ∫_{ℂⁿ} φ(|z|²) dV = κₙ ∫₀^∞ φ(t) t^{n−1} dt.
double sphere_factor(int n);

/// Fubini–Study volume of the chart, π^n/n!.
double fs_total_mass(int n);

/// Radial Fubini–Study measure κₙ t^{n−1}(1+t)^{−(n+1)} dt on [0, ∞), refined
/// toward 0 for the given ε; [1, ∞) is integrated in u = 1/t.
numgrid::WeightedMeasure fs_measure(int n, double eps);

/// det D²_ℂ v_ε / det D²_ℂ log(1+|z|²) on the nodes of `m`.
std::vector<double> density(const VEps& v, const numgrid::WeightedMeasure& m);

struct SweepRow {
  double eps = 0.0;
  double ent = 0.0;
  double osc = 0.0;   // |f_ε(0)|
  double mass = 0.0;  // measure mass used for Ent
  double det_bound = 0.0;
  double det_sup = 0.0;
};

/// Ent_{n,r} of the density and the oscillation proxy for every ε.
std::vector<SweepRow> entropy_sweep(int n, double r, const std::vector<double>& eps_list);

/// ε = 2^{−k}, k = k_lo..k_hi.
std::vector<double> dyadic_eps(int k_lo = 5, int k_hi = 40);

struct Annulus {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double mass = 0.0;
  double mean_density = 0.0;
  double max_density = 0.0;
};

/// Density aggregated over annuli with edges 0, ε/16, ε/4, ε, 4ε, …, 1/16, 1/4, 1, ∞.
std::vector<Annulus> density_table(const CounterexampleParams& params);

}  // namespace cmaest::radialpsh
