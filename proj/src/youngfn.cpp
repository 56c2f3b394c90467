#include "cmaest/youngfn.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cmaest::youngfn {

namespace {

void require_nonnegative(double t) {
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "Young function argument must be >= 0, got " << t;
    throw Error(ErrorCode::NegativeArgument, os.str());
  }
}

// Logarithmic building blocks at t > 0: L = log(1+t), M = log(1+L) and the
// ratios used by every derivative formula.
struct Logs {
  double L, M;
  double A, B;        // L'/L, M'/M
  double Lpp_L;       // L''/L
  double Mpp_M;       // M''/M
};

Logs logs_at(double t) {
  const double L = std::log1p(t);
  const double M = std::log1p(L);
  const double Lp = 1.0 / (1.0 + t);
  const double Lpp = -Lp * Lp;
  const double Mp = Lp / (1.0 + L);
  const double Mpp = Lpp / (1.0 + L) - Mp * Mp;
  return {L, M, Lp / L, Mp / M, Lpp / L, Mpp / M};
}

// (g'/g) and (g''/g) for g = L^q M^r.
std::pair<double, double> log_factor_ratios(const YoungParams& pr, const Logs& lg) {
  double b = 0.0, b2 = 0.0;
  if (pr.q != 0.0) {
    b += pr.q * lg.A;
    b2 += pr.q * (pr.q - 1.0) * lg.A * lg.A + pr.q * lg.Lpp_L;
  }
  if (pr.r != 0.0) {
    b += pr.r * lg.B;
    b2 += pr.r * (pr.r - 1.0) * lg.B * lg.B + pr.r * lg.Mpp_M;
  }
  if (pr.q != 0.0 && pr.r != 0.0) b2 += 2.0 * pr.q * pr.r * lg.A * lg.B;
  return {b, b2};
}

double log_factor(const YoungParams& pr, const Logs& lg) {
  double g = 1.0;
  if (pr.q != 0.0) g *= std::pow(lg.L, pr.q);
  if (pr.r != 0.0) g *= std::pow(lg.M, pr.r);
  return g;
}

}  // namespace

YoungParams::YoungParams(double p_, double q_, double r_) : p(p_), q(q_), r(r_) {
  if (!(p >= 1.0) || !(q >= 0.0) || !(r >= 0.0) || !std::isfinite(p) || !std::isfinite(q) ||
      !std::isfinite(r)) {
    std::ostringstream os;
    os << "Young parameters need p >= 1, q >= 0, r >= 0; got (" << p << ", " << q << ", " << r
       << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

double phi(const YoungParams& pr, double t) {
  require_nonnegative(t);
  if (t == 0.0) return 0.0;
  const double L = std::log1p(t);
  double v = std::pow(t, pr.p);
  if (pr.q != 0.0) v *= std::pow(L, pr.q);
  if (pr.r != 0.0) v *= std::pow(std::log1p(L), pr.r);
  return v;
}

double eta(const YoungParams& pr, double t) {
  require_nonnegative(t);
  if (t == 0.0) return pr.p + pr.q + pr.r == 1.0 ? 1.0 : 0.0;
  const double L = std::log1p(t);
  double v = pr.p == 1.0 ? 1.0 : std::pow(t, pr.p - 1.0);
  if (pr.q != 0.0) v *= std::pow(L, pr.q);
  if (pr.r != 0.0) v *= std::pow(std::log1p(L), pr.r);
  return v;
}

double phi_d1(const YoungParams& pr, double t) {
  require_nonnegative(t);
  const double s = pr.p + pr.q + pr.r;
  if (t == 0.0) return s == 1.0 ? 1.0 : 0.0;
  const double b = log_factor_ratios(pr, logs_at(t)).first;
  return phi(pr, t) * (pr.p / t + b);
}

double phi_d2(const YoungParams& pr, double t) {
  require_nonnegative(t);
  const double s = pr.p + pr.q + pr.r;
  if (t == 0.0) {
    if (s == 1.0 || s > 2.0) return 0.0;
    if (s == 2.0) return 2.0;
    return std::numeric_limits<double>::infinity();
  }
  const Logs lg = logs_at(t);
  const auto [b, b2] = log_factor_ratios(pr, lg);
  const double ratio = pr.p * (pr.p - 1.0) / (t * t) + 2.0 * pr.p * b / t + b2;
  return phi(pr, t) * ratio;
}

double phi_composed(const YoungParams& pr, double t) {
  require_nonnegative(t);
  if (t == 0.0) return 0.0;
  return phi(pr, std::pow(t, 1.0 / pr.p));
}

double phi_composed_d2(const YoungParams& pr, double t) {
  require_nonnegative(t);
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  const double u = std::pow(t, 1.0 / pr.p);
  const Logs lg = logs_at(u);
  const auto [b, b2] = log_factor_ratios(pr, lg);
  const double g = log_factor(pr, lg);
  return (u * g / (pr.p * t)) * (b * (1.0 + 1.0 / pr.p) + b2 * u / pr.p);
}

numgrid::SmoothFn phi_fn(const YoungParams& params, const numgrid::Interval& domain) {
  return {domain, [params](double t) {
            return numgrid::Jet{phi(params, t), phi_d1(params, t), phi_d2(params, t)};
          }};
}

ConvexityReport check_strict_convexity(const YoungParams& pr, const numgrid::WeightedMeasure& grid) {
  if (!pr.nonlinear())
    throw Error(ErrorCode::DegenerateParams, "Φ_{1,0,0}(t) = t is linear, not strictly convex");
  ConvexityReport rep;
  rep.composed_checked = pr.has_log_factor();
  rep.min_phi_d2 = std::numeric_limits<double>::infinity();
  rep.min_composed_d2 = std::numeric_limits<double>::infinity();
  bool first = true;
  for (double t : grid.nodes()) {
    if (!(t > 0.0)) continue;
    if (first) {
      rep.excluded_below = t;
      first = false;
    }
    const double d2 = phi_d2(pr, t);
    if (d2 < rep.min_phi_d2 || std::isnan(d2)) {
      rep.min_phi_d2 = d2;
      rep.argmin_phi_d2 = t;
    }
    bool bad = !(d2 > 0.0);
    if (rep.composed_checked) {
      const double c2 = phi_composed_d2(pr, t);
      if (c2 < rep.min_composed_d2 || std::isnan(c2)) {
        rep.min_composed_d2 = c2;
        rep.argmin_composed_d2 = t;
      }
      bad = bad || !(c2 > 0.0);
    }
    if (bad) rep.violations.push_back(t);
  }
  rep.ok = !first && rep.violations.empty();
  return rep;
}

double delta2_constant(const YoungParams& pr, const numgrid::WeightedMeasure& grid) {
  double k = 0.0;
  for (double t : grid.nodes()) {
    if (!(t > 0.0)) continue;
    const double den = phi(pr, t);
    if (den > 0.0) k = std::max(k, phi(pr, 2.0 * t) / den);
  }
  return k;
}

double delta2_bound(const YoungParams& pr) { return std::pow(2.0, pr.p + pr.q + pr.r); }

}  // namespace cmaest::youngfn
