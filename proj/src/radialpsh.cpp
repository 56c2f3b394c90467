#include "cmaest/radialpsh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <mutex>
#include <thread>

#include "cmaest/orlicz.hpp"
#include "cmaest/youngfn.hpp"

namespace cmaest::radialpsh {

using numgrid::Interval;
using numgrid::Jet;
using numgrid::SmoothFn;
using numgrid::WeightedMeasure;

namespace {

constexpr std::size_t kGlueProbes = 4097;
constexpr double kProfileEnd = 1e12;

void require_in(double t, double lo, double hi, const char* what) {
  if (!(t >= lo && t <= hi)) {
    std::ostringstream os;
    os << what << ": t=" << t << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
}

// Nested logs of x = 1/(t+ε) and the partial products of Pᵢ = 1/(1+Lᵢ).
struct FepsParts {
  double u, x, L1, L2, L3, d1, S;
};

FepsParts feps_parts(double eps, double t, double kappa) {
  const double u = t + eps;
  if (!(u > 0.0)) {
    std::ostringstream os;
    os << "f_eps needs t + eps > 0, got t=" << t << " eps=" << eps;
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
  FepsParts p;
  p.u = u;
  p.x = 1.0 / u;
  p.L1 = std::log1p(p.x);
  p.L2 = std::log1p(p.L1);
  p.L3 = std::log1p(p.L2);
  const double P1 = 1.0 / (1.0 + p.L1), P2 = 1.0 / (1.0 + p.L2), P3 = 1.0 / (1.0 + p.L3);
  // x²/(1+x) = x/(1+u).
  p.d1 = kappa * p.x / (1.0 + u) * P1 * P2 * P3;
  p.S = P1 + P1 * P2 + P1 * P2 * P3;
  return p;
}

Jet fs_jet(double t) {
  const double a = 1.0 / (1.0 + t);
  return {std::log1p(t), a, -a * a};
}

}  // namespace

RadialProfile::RadialProfile(int n_, SmoothFn fn_) : n(n_), fn(std::move(fn_)) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "complex dimension must be >= 2");
  if (fn.domain.lo < 0.0)
    throw Error(ErrorCode::InvalidArgument, "radial profile domain must lie in [0, inf)");
}

double radial_det(int n, double t, const Jet& j) {
  return std::pow(j.d1, n - 1) * (j.d1 + t * j.d2);
}

HessianSpectrum hessian_spectrum(const RadialProfile& p, double t) {
  require_in(t, p.fn.domain.lo, p.fn.domain.hi, "hessian_spectrum");
  const Jet j = p.fn.jet(t);
  HessianSpectrum s;
  s.lam_small = j.d1;
  s.lam_big = j.d1 + t * j.d2;
  s.det = std::pow(s.lam_small, p.n - 1) * s.lam_big;
  return s;
}

PshReport psh_check(const RadialProfile& p, const WeightedMeasure& grid) {
  PshReport rep;
  rep.min_small = rep.min_big = std::numeric_limits<double>::infinity();
  for (double t : grid.nodes()) {
    const HessianSpectrum s = hessian_spectrum(p, t);
    if (s.lam_small < rep.min_small || std::isnan(s.lam_small)) {
      rep.min_small = s.lam_small;
      rep.arg_small = t;
    }
    if (s.lam_big < rep.min_big || std::isnan(s.lam_big)) {
      rep.min_big = s.lam_big;
      rep.arg_big = t;
    }
  }
  rep.strictly_psh = grid.size() > 0 && rep.min_small > 0.0 && rep.min_big > 0.0;
  return rep;
}

SmoothFn fubini_study(const Interval& domain) { return {domain, fs_jet}; }

CounterexampleParams::CounterexampleParams(double eps_, int n_) : eps(eps_), n(n_) {
  if (!(eps > 0.0 && eps < 1.0 / 16.0)) {
    std::ostringstream os;
    os << "eps must lie in (0, 1/16), got " << eps;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "complex dimension must be >= 2");
}

Jet f_eps_jet(double eps, double t, double kappa) {
  const FepsParts p = feps_parts(eps, t, kappa);
  const double dlog = -2.0 * p.x + p.x / (1.0 + p.u) * (1.0 + p.S);
  return {-kappa * std::log1p(p.L3), p.d1, p.d1 * dlog};
}

double f_eps_big(double eps, double t, double kappa) {
  const FepsParts p = feps_parts(eps, t, kappa);
  // 1 + t·dlog f′ = εx − t/(1+u) + t·x·S/(1+u), with 1 − t·x = εx.
  const double theta = t * p.x;
  return p.d1 * (eps * p.x + (theta * p.S - t) / (1.0 + p.u));
}

double f_eps(const CounterexampleParams& params, double t) {
  require_in(t, 0.0, 0.25, "f_eps");
  return f_eps_jet(params.eps, t).v;
}

double f_eps_d1(const CounterexampleParams& params, double t) {
  require_in(t, 0.0, 0.25, "f_eps");
  return f_eps_jet(params.eps, t).d1;
}

double f_eps_d2(const CounterexampleParams& params, double t) {
  require_in(t, 0.0, 0.25, "f_eps");
  return f_eps_jet(params.eps, t).d2;
}

SmoothFn f_eps_fn(double eps, const Interval& domain, double kappa) {
  return {domain, [eps, kappa](double t) { return f_eps_jet(eps, t, kappa); }};
}

WeightedMeasure eps_refined_measure(double eps, double hi, int order) {
  const int panels = static_cast<int>(std::ceil(std::log2(hi / (eps * std::ldexp(1.0, -14)))));
  return numgrid::geometric_measure(Interval(0.0, hi), std::max(panels, 1), order);
}

FepsBounds f_eps_bounds(const CounterexampleParams& params, double t0) {
  if (!(t0 > 0.0 && t0 < 0.25)) {
    std::ostringstream os;
    os << "t0 must lie in (0, 1/4), got " << t0;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  FepsBounds rep;
  const double eps = params.eps;
  rep.sup_big = -std::numeric_limits<double>::infinity();
  constexpr int kSupProbes = 4097;
  for (int i = 0; i < kSupProbes; ++i) {
    const double t = t0 + (0.25 - t0) * i / (kSupProbes - 1);
    const double b = f_eps_big(eps, t, 1.0);
    if (b > rep.sup_big) {
      rep.sup_big = b;
      rep.arg_sup_big = t;
    }
  }
  const int n = params.n;
  const youngfn::YoungParams yp(1.0, n, n - 1);
  const WeightedMeasure m = eps_refined_measure(eps, 0.25);
  std::vector<double> terms(m.size());
  rep.min_d1 = rep.min_big = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double t = m.nodes()[i];
    const double d1 = f_eps_jet(eps, t, 1.0).d1;
    const double big = f_eps_big(eps, t, 1.0);
    rep.min_d1 = std::min(rep.min_d1, d1);
    rep.min_big = std::min(rep.min_big, big);
    const double F = std::pow(d1, n - 1) * big;
    terms[i] = m.weights()[i] * std::pow(t, n - 1) * youngfn::phi(yp, F);
  }
  rep.integral = numgrid::pairwise_sum(terms);
  rep.finite = std::isfinite(rep.integral) && std::isfinite(rep.sup_big);
  return rep;
}

VEps build_v_eps(const CounterexampleParams& params) {
  const double eps = params.eps;
  gluing::GlueProblem problem(f_eps_fn(eps, Interval(kInnerLo, kInnerHi)),
                              fubini_study(Interval(kOuterLo, kOuterHi)), gluing::Mode::RadialPsh,
                              params.n);
  gluing::GlueResult g = gluing::glue(problem, kGlueProbes);
  const SmoothFn h = g.h;
  SmoothFn v{Interval(0.0, kProfileEnd), [eps, h](double t) {
               if (t < 0.0) throw Error(ErrorCode::OutOfDomain, "v_eps needs t >= 0");
               if (t <= kInnerHi) return f_eps_jet(eps, t);
               if (t < kOuterLo) return h.jet(t);
               return fs_jet(t);
             }};
  auto seam = [](double t, const Jet& l, const Jet& r) {
    return Seam{t, std::abs(l.v - r.v), std::abs(l.d1 - r.d1), std::abs(l.d2 - r.d2)};
  };
  VEps out{params, std::move(g), RadialProfile(params.n, std::move(v)), {}, {}};
  out.inner = seam(kInnerHi, f_eps_jet(eps, kInnerHi), h.jet(kInnerHi));
  out.outer = seam(kOuterLo, h.jet(kOuterLo), fs_jet(kOuterLo));
  return out;
}

double sphere_factor(int n) { return std::pow(std::numbers::pi, n) / std::tgamma(n); }

double fs_total_mass(int n) { return std::pow(std::numbers::pi, n) / std::tgamma(n + 1.0); }

WeightedMeasure fs_measure(int n, double eps) {
  const double k = sphere_factor(n);
  auto weight = [n, k](double t) { return k * std::pow(t, n - 1) * std::pow(1.0 + t, -(n + 1)); };
  auto reweight = [&](const WeightedMeasure& m) {
    std::vector<double> x(m.nodes().begin(), m.nodes().end()), w(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) w[i] = m.weights()[i] * weight(x[i]);
    return WeightedMeasure(std::move(x), std::move(w));
  };
  const WeightedMeasure inner = reweight(eps_refined_measure(eps, kInnerHi));
  const WeightedMeasure band = reweight(numgrid::gauss_measure(Interval(kInnerHi, kOuterLo), 128, 16));
  // t = 1/u on [1, ∞): κ t^{n−1}(1+t)^{−(n+1)} dt = κ (1+u)^{−(n+1)} du.
  const WeightedMeasure um = numgrid::gauss_measure(Interval(0.0, 1.0), 16, 16);
  std::vector<double> x(um.size()), w(um.size());
  for (std::size_t i = 0; i < um.size(); ++i) {
    const std::size_t j = um.size() - 1 - i;
    const double u = um.nodes()[j];
    x[i] = 1.0 / u;
    w[i] = um.weights()[j] * k * std::pow(1.0 + u, -(n + 1));
  }
  const WeightedMeasure outer(std::move(x), std::move(w));
  const WeightedMeasure parts[] = {inner, band, outer};
  return WeightedMeasure::concat(parts);
}

std::vector<double> density(const VEps& v, const WeightedMeasure& m) {
  const int n = v.params.n;
  std::vector<double> psi(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double t = m.nodes()[i];
    psi[i] = radial_det(n, t, v.profile.fn.jet(t)) * std::pow(1.0 + t, n + 1);
  }
  return psi;
}

std::vector<SweepRow> entropy_sweep(int n, double r, const std::vector<double>& eps_list) {
  const orlicz::EntropyParams ep(n, r);
  std::vector<SweepRow> rows(eps_list.size());
  for (double e : eps_list) CounterexampleParams(e, n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < eps_list.size(); i = next++) {
      const CounterexampleParams params(eps_list[i], n);
      const VEps v = build_v_eps(params);
      const WeightedMeasure m = fs_measure(n, params.eps);
      const auto ent = orlicz::entropy(numgrid::GridFn(m, density(v, m)), ep);
      rows[i] = {params.eps, ent.ent, -f_eps(params, 0.0), m.mass(), v.glue.det_bound,
                 v.glue.det_sup};
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t count = std::min<std::size_t>(hw, eps_list.size());
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (std::size_t k = 0; k < count; ++k) {
    pool.emplace_back([&] {
      try {
        worker();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = eps_list.size();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<double> dyadic_eps(int k_lo, int k_hi) {
  std::vector<double> e;
  for (int k = k_lo; k <= k_hi; ++k) e.push_back(std::ldexp(1.0, -k));
  return e;
}

std::vector<Annulus> density_table(const CounterexampleParams& params) {
  const VEps v = build_v_eps(params);
  const WeightedMeasure m = fs_measure(params.n, params.eps);
  const std::vector<double> psi = density(v, m);
  std::vector<double> edges{0.0};
  for (double e = params.eps / 16.0; e < kInnerHi; e *= 4.0) edges.push_back(e);
  for (double e : {kInnerHi, 0.25, kOuterLo, std::numeric_limits<double>::infinity()})
    edges.push_back(e);
  std::vector<Annulus> rows;
  for (std::size_t a = 0; a + 1 < edges.size(); ++a) {
    Annulus row{edges[a], edges[a + 1], 0.0, 0.0, 0.0};
    double wsum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double t = m.nodes()[i];
      if (t < row.t_lo || t >= row.t_hi) continue;
      row.mass += m.weights()[i];
      wsum += m.weights()[i] * psi[i];
      row.max_density = std::max(row.max_density, psi[i]);
    }
    row.mean_density = row.mass > 0.0 ? wsum / row.mass : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cmaest::radialpsh
