#include "cmaest/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace cmaest::orlicz {

using numgrid::GridFn;
using youngfn::YoungParams;

double modular(const GridFn& f, const YoungParams& params, double c) {
  const auto w = f.measure.weights();
  std::vector<double> terms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = f.values[i];
    if (std::isnan(x)) throw Error(ErrorCode::NonFinite, "NaN in grid function");
    terms[i] = x == 0.0 ? 0.0 : w[i] * youngfn::phi(params, std::abs(x) / c);
  }
  return numgrid::pairwise_sum(terms);
}

LuxemburgResult luxemburg_norm(const GridFn& f, const YoungParams& params, double rel_tol) {
  double fmax = 0.0;
  for (double v : f.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "grid function must be finite");
    fmax = std::max(fmax, std::abs(v));
  }
  if (fmax == 0.0) return {};

  double l1 = 0.0;
  {
    const auto w = f.measure.weights();
    std::vector<double> terms(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) terms[i] = w[i] * std::abs(f.values[i]);
    l1 = numgrid::pairwise_sum(terms);
  }
  const double mass = f.measure.mass();
  double lo = fmax * 1e-12;
  double hi = std::max(l1, fmax) * (1.0 + mass);
  auto G = [&](double c) { return modular(f, params, c); };
  // Objective overflow at the tiny lower end still means "above 1".
  while (!std::isfinite(G(lo)) && lo < hi) lo *= 2.0;
  while (G(lo) <= 1.0) lo *= 0.5;
  while (G(hi) > 1.0) hi *= 2.0;

  const auto br = numgrid::bisect_bracket([&](double x) { return G(std::exp(x)); }, 1.0,
                                          std::log(lo), std::log(hi),
                                          numgrid::Direction::Decreasing, rel_tol);
  LuxemburgResult res;
  res.norm = std::exp(br.hi);
  res.objective_at_norm = G(res.norm);
  res.bracket_lo = std::exp(br.lo);
  res.bracket_hi = res.norm;
  return res;
}

EntropyParams::EntropyParams(int n_, double r_) : n(n_), r(r_) {
  if (n < 1 || !(r >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "entropy needs n >= 1 and r >= 0");
}

EntropyResult entropy(const GridFn& density, const EntropyParams& ep, double rel_tol) {
  for (double v : density.values) {
    if (v < 0.0) {
      std::ostringstream os;
      os << "density must be non-negative, found " << v;
      throw Error(ErrorCode::NegativeDensity, os.str());
    }
  }
  const YoungParams yp = ep.young();
  EntropyResult res;
  res.detail = luxemburg_norm(density, yp, rel_tol);
  res.ent = res.detail.norm;
  res.raw_integral = modular(density, yp, 1.0);
  res.upper_bound = std::max(1.0, res.raw_integral);
  res.bound_ok = res.ent <= res.upper_bound * (1.0 + kSlack);
  return res;
}

double ent_domination_factor(double r, double mass) {
  return std::max(1.0, 1.0 / std::pow(std::numbers::ln2, r) + (std::numbers::e - 1.0) * mass);
}

double norm_bound_from_integral(double c, double M, const YoungParams& params) {
  if (!(c > 0.0) || !(M > 0.0))
    throw Error(ErrorCode::InvalidArgument, "norm bound needs c > 0 and M > 0");
  return c * std::max(1.0, std::pow(M, 1.0 / params.p));
}

IntegralBound integral_bound_from_norm(const GridFn& f, const YoungParams& params) {
  IntegralBound res;
  res.norm = luxemburg_norm(f, params).norm;
  res.lhs = modular(f, params, 1.0);
  const double s = params.p + params.q + params.r;
  res.rhs = std::max(std::pow(res.norm, params.p), std::pow(res.norm, s));
  res.ok = res.lhs <= res.rhs * (1.0 + kSlack);
  return res;
}

double holder_young_constant(const YoungParams& params) {
  return std::pow(params.p + params.q / 2.0 + params.r / 4.0, (params.q + params.r) / params.p);
}

double holder_young_rhs(double norm, double mass, const YoungParams& params) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    std::ostringstream os;
    os << "measure mass must lie in (0, inf), got " << mass;
    throw Error(ErrorCode::ZeroMass, os.str());
  }
  const double C = holder_young_constant(params);
  const double L = std::log1p(1.0 / mass);
  const double LL = std::log1p(L);
  double den = 1.0;
  if (params.q != 0.0) den *= std::pow(L, params.q / params.p);
  if (params.r != 0.0) den *= std::pow(LL, params.r / params.p);
  return 2.0 * C * norm * std::pow(mass, 1.0 - 1.0 / params.p) / den;
}

HolderYoung holder_young_bound(const GridFn& f, const YoungParams& params) {
  HolderYoung res;
  res.mass = f.measure.mass();
  res.C = holder_young_constant(params);
  res.norm = luxemburg_norm(f, params).norm;
  res.rhs = holder_young_rhs(res.norm, res.mass, params);
  const auto w = f.measure.weights();
  std::vector<double> terms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) terms[i] = w[i] * std::abs(f.values[i]);
  res.lhs = numgrid::pairwise_sum(terms);
  res.ok = res.lhs <= res.rhs * (1.0 + kSlack);
  return res;
}

double young_psi(const YoungParams& params, double t) {
  return std::pow(youngfn::eta(params, t), 1.0 / params.p) / holder_young_constant(params);
}

double young_psi_inverse(const YoungParams& params, double b) {
  if (!(b >= 0.0)) throw Error(ErrorCode::NegativeArgument, "Ψ^{-1} needs b >= 0");
  if (b == 0.0) return 0.0;
  if (!params.nonlinear()) {
    // Ψ ≡ 1/C = 1: the generalized inverse jumps from 0 to +∞.
    return b <= young_psi(params, 1.0) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  auto psi = [&](double t) { return young_psi(params, t); };
  double hi = 1.0;
  while (psi(hi) < b) hi *= 2.0;
  const double tol = 1e-14 * std::max(1.0, hi);
  return numgrid::bisect_monotone(psi, b, 0.0, hi, numgrid::Direction::Increasing, tol);
}

YoungPair young_pair_check(double a, double b, const YoungParams& params) {
  if (!(a >= 0.0) || !(b >= 0.0))
    throw Error(ErrorCode::NegativeArgument, "Young pairing needs a, b >= 0");
  YoungPair res;
  res.lhs = a * b;
  res.phi_a = youngfn::phi(params, a);
  res.psi_inv = young_psi_inverse(params, b);
  res.rhs = res.phi_a + res.psi_inv;
  res.ok = res.lhs <= res.rhs * (1.0 + kSlack);
  return res;
}

}  // namespace cmaest::orlicz
