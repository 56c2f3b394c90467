#pragma once

// Luxemburg norms of L^p(log L)^q(log log L)^r and the inequalities tying the
// norm to the modular ∫Φ(|f|)dμ.

#include "cmaest/numgrid.hpp"
#include "cmaest/youngfn.hpp"

namespace cmaest::orlicz {

/// Multiplicative slack carried by every inequality check (absorbs quadrature
/// and bisection error).
inline constexpr double kSlack = 1e-8;

/// Default relative tolerance of the Luxemburg bisection.
inline constexpr double kNormTol = 1e-10;

struct LuxemburgResult {
  double norm = 0.0;
  double objective_at_norm = 0.0;  // ∫Φ(|f|/norm)dμ, ≤ 1
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// ∫Φ(|f|/c)dμ.
double modular(const numgrid::GridFn& f, const youngfn::YoungParams& params, double c);

/// inf{c > 0 : ∫Φ(|f|/c)dμ ≤ 1}, by bisection in log c to relative width `rel_tol`.
/// The returned norm is the upper end of the final bracket, so
/// objective_at_norm ≤ 1 always holds. f ≡ 0 gives 0.
LuxemburgResult luxemburg_norm(const numgrid::GridFn& f, const youngfn::YoungParams& params,
                               double rel_tol = kNormTol);

struct EntropyParams {
  int n = 1;
  double r = 0.0;

  EntropyParams() = default;
  EntropyParams(int n_, double r_);
  youngfn::YoungParams young() const { return {1.0, static_cast<double>(n), r}; }
};

struct EntropyResult {
  double ent = 0.0;
  double raw_integral = 0.0;  // ∫ψ logⁿ(1+ψ) log^r(1+log(1+ψ)) dμ
  double upper_bound = 0.0;   // max{1, raw_integral}
  bool bound_ok = true;
  LuxemburgResult detail;
};

/// Ent_{n,r}(ψ): the L¹(log L)ⁿ(log log L)^r norm of a non-negative density.
EntropyResult entropy(const numgrid::GridFn& density, const EntropyParams& ep,
                      double rel_tol = kNormTol);

/// max{1, 1/log^r 2 + (e−1)·mass}: the factor by which Ent_{n,r} dominates Ent_{n,0}.
double ent_domination_factor(double r, double mass);

/// c·max{1, M^{1/p}}: a norm bound from ∫Φ(|f|/c)dμ ≤ M.
double norm_bound_from_integral(double c, double M, const youngfn::YoungParams& params);

struct IntegralBound {
  double lhs = 0.0;   // ∫Φ(|f|)dμ
  double rhs = 0.0;   // max{N^p, N^{p+q+r}}
  double norm = 0.0;  // N
  bool ok = true;
};

IntegralBound integral_bound_from_norm(const numgrid::GridFn& f, const youngfn::YoungParams& params);

struct HolderYoung {
  double lhs = 0.0;  // ∫|f|dμ
  double rhs = 0.0;
  double C = 0.0;
  double norm = 0.0;
  double mass = 0.0;
  bool ok = true;
  double tightness() const { return rhs > 0.0 ? lhs / rhs : 0.0; }
};

/// (p + q/2 + r/4)^{(q+r)/p}.
double holder_young_constant(const youngfn::YoungParams& params);

/// 2C·N·mass^{1−1/p} / (log^{q/p}(1+1/mass)·log^{r/p}(1+log(1+1/mass))).
/// ZeroMass unless 0 < mass < ∞.
double holder_young_rhs(double norm, double mass, const youngfn::YoungParams& params);

HolderYoung holder_young_bound(const numgrid::GridFn& f, const youngfn::YoungParams& params);

struct YoungPair {
  double lhs = 0.0;      // a·b
  double phi_a = 0.0;    // Φ(a)
  double psi_inv = 0.0;  // Ψ^{-1}(b), +∞ when b exceeds sup Ψ
  double rhs = 0.0;
  bool ok = true;
};

/// Ψ(t) = η(t)^{1/p} / C.
double young_psi(const youngfn::YoungParams& params, double t);

/// Generalized inverse inf{t ≥ 0 : Ψ(t) ≥ b}.
double young_psi_inverse(const youngfn::YoungParams& params, double b);

/// ab ≤ Φ(a) + Ψ^{-1}(b).
YoungPair young_pair_check(double a, double b, const youngfn::YoungParams& params);

}  // namespace cmaest::orlicz
