#include "cmaest/numgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cmaest {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::NegativeArgument: return "NegativeArgument";
    case ErrorCode::DegenerateParams: return "DegenerateParams";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::BetaNotGreaterThanAlpha: return "BetaNotGreaterThanAlpha";
    case ErrorCode::HypothesisFails: return "HypothesisFails";
    case ErrorCode::GridTooShort: return "GridTooShort";
    case ErrorCode::NonPositiveEps: return "NonPositiveEps";
    case ErrorCode::IncompatiblePieces: return "IncompatiblePieces";
    case ErrorCode::NotStrictlyConvexPiece: return "NotStrictlyConvexPiece";
    case ErrorCode::DeltaSearchFailed: return "DeltaSearchFailed";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DerivativeMismatch: return "DerivativeMismatch";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::FileFormat: return "FileFormat";
  }
  return "Unknown";
}

}  // namespace cmaest

namespace cmaest::numgrid {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream os;
    os << "interval requires finite lo < hi, got [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

WeightedMeasure::WeightedMeasure(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size() || nodes_.empty())
    throw Error(ErrorCode::InvalidArgument, "measure needs equally many nodes and weights (>0)");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw Error(ErrorCode::InvalidArgument, "measure weights must be finite and positive");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "measure nodes must be strictly increasing");
  }
  mass_ = pairwise_sum(weights_);
}

WeightedMeasure WeightedMeasure::concat(std::span<const WeightedMeasure> parts) {
  std::vector<double> nodes, weights;
  for (const auto& p : parts) {
    nodes.insert(nodes.end(), p.nodes().begin(), p.nodes().end());
    weights.insert(weights.end(), p.weights().begin(), p.weights().end());
  }
  return WeightedMeasure(std::move(nodes), std::move(weights));
}

GridFn::GridFn(WeightedMeasure m, std::vector<double> v) : measure(std::move(m)), values(std::move(v)) {
  if (values.size() != measure.size())
    throw Error(ErrorCode::InvalidArgument, "grid function length does not match measure");
}

GridFn::GridFn(WeightedMeasure m, const std::function<double(double)>& f) : measure(std::move(m)) {
  values.reserve(measure.size());
  for (double t : measure.nodes()) values.push_back(f(t));
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double integrate(const GridFn& f) {
  const auto w = f.measure.weights();
  std::vector<double> terms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::isnan(f.values[i]))
      throw Error(ErrorCode::NonFinite, "NaN value at node " + std::to_string(i));
    terms[i] = w[i] * f.values[i];
  }
  return pairwise_sum(terms);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order) {
  if (order < 2 || order > 64)
    throw Error(ErrorCode::OrderOutOfRange, "Gauss–Legendre order must be in 2..64, got " +
                                                std::to_string(order));
  const int n = order;
  std::vector<double> x(n), w(n);
  // Newton on P_n from Chebyshev-like initial guesses; symmetric halves.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return {x, w};
}

namespace {

void append_panel(std::vector<double>& nodes, std::vector<double>& weights,
                  const std::vector<double>& gx, const std::vector<double>& gw, double a,
                  double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < gx.size(); ++i) {
    nodes.push_back(mid + half * gx[i]);
    weights.push_back(half * gw[i]);
  }
}

}  // namespace

WeightedMeasure gauss_measure(const Interval& interval, int panels, int order) {
  if (panels < 1) throw Error(ErrorCode::InvalidArgument, "panels must be >= 1");
  const auto [gx, gw] = gauss_legendre(order);
  std::vector<double> nodes, weights;
  nodes.reserve(static_cast<std::size_t>(panels) * order);
  weights.reserve(nodes.capacity());
  const double h = interval.width() / panels;
  for (int k = 0; k < panels; ++k) {
    const double a = interval.lo + k * h;
    const double b = (k + 1 == panels) ? interval.hi : interval.lo + (k + 1) * h;
    append_panel(nodes, weights, gx, gw, a, b);
  }
  return WeightedMeasure(std::move(nodes), std::move(weights));
}

WeightedMeasure geometric_measure(const Interval& interval, int panels, int order, double ratio) {
  if (panels < 1) throw Error(ErrorCode::InvalidArgument, "panels must be >= 1");
  if (!(ratio > 1.0)) throw Error(ErrorCode::InvalidArgument, "refinement ratio must exceed 1");
  const auto [gx, gw] = gauss_legendre(order);
  // Breakpoints lo + w·ratio^-k, k = 0..panels, plus lo itself.
  std::vector<double> breaks;
  breaks.push_back(interval.lo);
  for (int k = panels; k >= 0; --k)
    breaks.push_back(interval.lo + interval.width() * std::pow(ratio, -k));
  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    append_panel(nodes, weights, gx, gw, breaks[i], breaks[i + 1]);
  return WeightedMeasure(std::move(nodes), std::move(weights));
}

WeightedMeasure uniform_grid(const Interval& interval, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
  std::vector<double> nodes(count), weights(count);
  const double h = interval.width() / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    nodes[i] = (i + 1 == count) ? interval.hi : interval.lo + h * static_cast<double>(i);
    weights[i] = (i == 0 || i + 1 == count) ? 0.5 * h : h;
  }
  return WeightedMeasure(std::move(nodes), std::move(weights));
}

WeightedMeasure log_grid(const Interval& interval, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
  if (!(interval.lo > 0.0)) throw Error(ErrorCode::InvalidArgument, "log grid needs lo > 0");
  std::vector<double> nodes(count), weights(count);
  const double a = std::log(interval.lo), b = std::log(interval.hi);
  for (std::size_t i = 0; i < count; ++i)
    nodes[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  nodes.front() = interval.lo;
  nodes.back() = interval.hi;
  for (std::size_t i = 0; i < count; ++i) {
    const double left = i == 0 ? nodes[0] : nodes[i - 1];
    const double right = i + 1 == count ? nodes[i] : nodes[i + 1];
    weights[i] = 0.5 * (right - left);
  }
  return WeightedMeasure(std::move(nodes), std::move(weights));
}

BisectResult bisect_bracket(const std::function<double(double)>& g, double target, double lo,
                            double hi, Direction direction, double tol) {
  if (!(lo < hi) || !(tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "bisection needs lo < hi and tol > 0");
  auto probe = [&](double c) {
    const double v = g(c);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "objective is " << v << " at c = " << c;
      throw Error(ErrorCode::NonFinite, os.str());
    }
    // Positive means "past the target" in the direction of growth.
    return direction == Direction::Increasing ? v - target : target - v;
  };
  const double flo = probe(lo), fhi = probe(hi);
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream os;
    os << "no sign change of g - target on [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::NoBracket, os.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (probe(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

double bisect_monotone(const std::function<double(double)>& g, double target, double lo, double hi,
                       Direction direction, double tol) {
  const auto b = bisect_bracket(g, target, lo, hi, direction, tol);
  return 0.5 * (b.lo + b.hi);
}

std::pair<double, double> sup_on_grid(const std::function<double(double)>& f,
                                      const WeightedMeasure& m) {
  const auto nodes = m.nodes();
  double best = f(nodes[0]), arg = nodes[0];
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double v = f(nodes[i]);
    if (v > best) {
      best = v;
      arg = nodes[i];
    }
  }
  return {best, arg};
}

std::pair<double, double> inf_on_grid(const std::function<double(double)>& f,
                                      const WeightedMeasure& m) {
  auto [v, arg] = sup_on_grid([&](double t) { return -f(t); }, m);
  return {-v, arg};
}

ConsistencyReport check_derivative_consistency(const SmoothFn& fn, std::size_t probes, double scale,
                                               double tol) {
  if (scale <= 0.0) scale = fn.domain.width();
  const double h = 1e-5 * scale;
  const double lo = fn.domain.lo + 2.0 * h, hi = fn.domain.hi - 2.0 * h;
  ConsistencyReport rep;
  if (!(lo < hi) || probes < 2) return rep;

  std::vector<double> ts(probes), e1(probes), e2(probes), fd1(probes), fd2(probes);
  double mag1 = 0.0, mag2 = 0.0;
  for (std::size_t i = 0; i < probes; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(probes - 1);
    const Jet c = fn.jet(t), p = fn.jet(t + h), m = fn.jet(t - h);
    ts[i] = t;
    e1[i] = c.d1;
    e2[i] = c.d2;
    fd1[i] = (p.v - m.v) / (2.0 * h);
    fd2[i] = (p.d1 - m.d1) / (2.0 * h);
    mag1 = std::max(mag1, std::abs(c.d1));
    mag2 = std::max(mag2, std::abs(c.d2));
  }
  for (std::size_t i = 0; i < probes; ++i) {
    const double r1 = std::abs(fd1[i] - e1[i]) /
                      std::max({std::abs(e1[i]), std::abs(fd1[i]), 1e-6 * mag1, 1e-300});
    const double r2 = std::abs(fd2[i] - e2[i]) /
                      std::max({std::abs(e2[i]), std::abs(fd2[i]), 1e-6 * mag2, 1e-300});
    if (!(r1 <= rep.max_rel_err1)) {
      rep.max_rel_err1 = r1;
      rep.worst_t1 = ts[i];
    }
    if (!(r2 <= rep.max_rel_err2)) {
      rep.max_rel_err2 = r2;
      rep.worst_t2 = ts[i];
    }
  }
  rep.ok = rep.max_rel_err1 <= tol && rep.max_rel_err2 <= tol;
  return rep;
}

void require_derivative_consistency(const SmoothFn& fn, std::string_view label, double scale) {
  const auto rep = check_derivative_consistency(fn, 257, scale);
  if (!rep.ok) {
    std::ostringstream os;
    os << label << ": derivative consistency failed (rel err d1 " << rep.max_rel_err1 << " at t="
       << rep.worst_t1 << ", d2 " << rep.max_rel_err2 << " at t=" << rep.worst_t2 << ")";
    throw Error(ErrorCode::DerivativeMismatch, os.str());
  }
}

}  // namespace cmaest::numgrid
