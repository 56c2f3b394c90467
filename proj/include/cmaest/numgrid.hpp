#pragma once

// Discrete measures, Gauss–Legendre quadrature, monotone bisection and the
// order-2 smooth function representation shared by every other module.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cmaest/error.hpp"

namespace cmaest::numgrid {

struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_);
  double width() const { return hi - lo; }
  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Finite list of strictly increasing nodes with positive weights.
class WeightedMeasure {
 public:
  WeightedMeasure() = default;
  WeightedMeasure(std::vector<double> nodes, std::vector<double> weights);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  double mass() const { return mass_; }

  /// Concatenate measures with disjoint, ordered supports.
  static WeightedMeasure concat(std::span<const WeightedMeasure> parts);

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double mass_ = 0.0;
};

/// Values of a function on the nodes of a measure.
struct GridFn {
  WeightedMeasure measure;
  std::vector<double> values;

  GridFn(WeightedMeasure m, std::vector<double> v);
  GridFn(WeightedMeasure m, const std::function<double(double)>& f);
};

struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Function on an interval with value, first and second derivative.
struct SmoothFn {
  Interval domain;
  std::function<Jet(double)> eval;

  Jet jet(double t) const { return eval(t); }
  double value(double t) const { return eval(t).v; }
  double d1(double t) const { return eval(t).d1; }
  double d2(double t) const { return eval(t).d2; }
};

struct ConsistencyReport {
  double max_rel_err1 = 0.0;  // eval1 vs central difference of eval0
  double max_rel_err2 = 0.0;  // eval2 vs central difference of eval1
  double worst_t1 = 0.0;
  double worst_t2 = 0.0;
  bool ok = true;
};

/// Central-difference check of eval1 against eval0 and eval2 against eval1 on
/// `probes` equally spaced interior points, step `1e-5 * scale`. Errors are
/// relative to max(|exact|, |fd|, 1e-6 * max_probe |exact|).
ConsistencyReport check_derivative_consistency(const SmoothFn& fn, std::size_t probes = 257,
                                               double scale = 0.0, double tol = 1e-5);

/// Throws DerivativeMismatch unless `fn` passes check_derivative_consistency.
void require_derivative_consistency(const SmoothFn& fn, std::string_view label,
                                    double scale = 0.0);

/// Deterministic pairwise (tree) summation.
double pairwise_sum(std::span<const double> xs);

/// Σ weightsᵢ · valuesᵢ, reduced pairwise. NaN in the values is a hard error.
double integrate(const GridFn& f);

/// Gauss–Legendre nodes and weights on [-1, 1], order in 2..64.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order);

/// Composite Gauss–Legendre with `panels` equal panels.
WeightedMeasure gauss_measure(const Interval& interval, int panels, int order);

/// Composite Gauss–Legendre whose panels shrink geometrically toward `interval.lo`:
/// panel k (counted from hi) covers [lo + w·ratio^-(k+1), lo + w·ratio^-k] and a final
/// panel covers the remainder down to lo.
WeightedMeasure geometric_measure(const Interval& interval, int panels, int order,
                                  double ratio = 2.0);

/// Uniform grid of `count` points on [lo, hi] with trapezoid weights.
WeightedMeasure uniform_grid(const Interval& interval, std::size_t count);

/// Log-spaced grid of `count` points on [lo, hi], lo > 0, with trapezoid weights.
WeightedMeasure log_grid(const Interval& interval, std::size_t count);

enum class Direction { Increasing, Decreasing };

/// Bisection for g(c) = target with g monotone in `direction` on [lo, hi].
/// Returns the midpoint of the final bracket, whose width is ≤ tol.
/// Throws NoBracket if g - target does not change sign over [lo, hi] and
/// NonFinite if g is NaN or infinite at a probed point.
double bisect_monotone(const std::function<double(double)>& g, double target, double lo,
                       double hi, Direction direction, double tol);

struct BisectResult {
  double lo;
  double hi;
};

/// Same search, returning the final bracket itself.
BisectResult bisect_bracket(const std::function<double(double)>& g, double target, double lo,
                            double hi, Direction direction, double tol);

/// (max over nodes, argmax node). Ties keep the first node.
std::pair<double, double> sup_on_grid(const std::function<double(double)>& f,
                                      const WeightedMeasure& m);

/// (min over nodes, argmin node).
std::pair<double, double> inf_on_grid(const std::function<double(double)>& f,
                                      const WeightedMeasure& m);

}  // namespace cmaest::numgrid
