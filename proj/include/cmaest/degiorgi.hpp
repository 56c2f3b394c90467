#pragma once

// Iteration lemma of De Giorgi type: the vanishing threshold T_γ, its
// contrapositive lower bound L_γ, and checks on sampled level-set functions.

#include <cstddef>
#include <functional>
#include <vector>

#include "cmaest/numgrid.hpp"

namespace cmaest::degiorgi {

/// Values below this are treated as exact zeros.
inline constexpr double kZeroFloor = 1e-300;

/// Pair scans subsample larger grids down to this many nodes.
inline constexpr std::size_t kMaxScanNodes = 4096;

/// f(s) ≤ C/(s−t)^α · f(t) · log^{−β}(1+1/f(t)) for s > t ≥ t0.
struct IterationHypothesis {
  double C = 1.0;
  double alpha = 1.0;
  double beta = 2.0;
  double t0 = 0.0;
  double f_t0 = 0.0;

  IterationHypothesis() = default;
  IterationHypothesis(double C_, double alpha_, double beta_, double t0_, double f_t0_);
};

/// Non-negative, non-increasing function sampled on a strictly increasing grid.
/// When `exact` is set it evaluates f anywhere on [t0, ∞); otherwise off-grid
/// values are bounded above by the value at the largest node ≤ t.
class LevelSetFn {
 public:
  LevelSetFn(std::vector<double> grid, std::vector<double> values,
             std::function<double(double)> exact = {});

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double t0() const { return grid_.front(); }
  double f_t0() const { return values_.front(); }
  bool has_exact() const { return static_cast<bool>(exact_); }

  double at(double t) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::function<double(double)> exact_;
};

/// t ↦ μ{x : u(x) > t} for samples u on a discrete measure, tabulated on `grid`
/// and evaluable exactly off-grid.
LevelSetFn superlevel_measure(const numgrid::WeightedMeasure& measure, std::span<const double> u,
                              std::vector<double> grid);

struct TGamma {
  double value = 0.0;
  double two_branch = 0.0;
  double max_form = 0.0;
  int branch = 1;           // 1: f(t0) ≤ 1, 2: f(t0) > 1
  bool zero_limit = false;  // f(t0) = 0 and γ < β/α: both forms tend to 0
  bool forms_agree = true;  // relative gap ≤ 1e-12
};

/// Vanishing threshold. GammaOutOfRange unless γ ∈ (1, β/α];
/// BetaNotGreaterThanAlpha unless β > α.
TGamma t_gamma(const IterationHypothesis& h, double gamma);

/// max{(A₁/T)^{α/(β−γα)}, (A₂/T)^{α/β}} with A₁ = (Ce)^{1/α}(2/log 2)^γ/(γ−1),
/// A₂ = (Ce)^{1/α}2^γ/(γ−1). Requires γ ∈ (1, β/α) and T > 0.
double l_gamma(double C, double alpha, double beta, double gamma, double T);

struct PairViolation {
  double t;
  double s;
  double ratio;  // normalized by C
};

struct HypothesisReport {
  double worst_ratio = 0.0;  // max over pairs of f(s)(s−t)^α log^β(1+1/f(t)) / (C f(t))
  double worst_t = 0.0;
  double worst_s = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;  // f(t) = 0
  std::size_t scan_nodes = 0;
  std::size_t violation_count = 0;
  std::vector<PairViolation> violations;  // first 64
  bool ok = true;
};

HypothesisReport check_hypothesis(const LevelSetFn& f, const IterationHypothesis& h);

/// Smallest C for which the hypothesis holds on the scanned grid pairs.
double fit_constant(const LevelSetFn& f, double alpha, double beta);

enum class VanishStatus { Vanished, NotVanished, NotApplicable };

struct ChainStep {
  int n;
  double t;
  double value;
  double bound;  // f(t0)·e^{1−n}
  bool ok;
};

struct VanishingReport {
  VanishStatus status = VanishStatus::NotApplicable;
  TGamma T;
  double t_vanish = 0.0;    // t0 + T_γ
  double t_checked = 0.0;   // first grid node ≥ t_vanish
  double value_at_checked = 0.0;
  std::vector<ChainStep> chain;
  bool chain_ok = true;
  HypothesisReport hypothesis;
};

/// Runs check_hypothesis, then checks f = 0 at the first node ≥ t0 + T_γ and the
/// induction chain f(t0 + (1−n^{1−γ})T_γ) ≤ f(t0)e^{1−n}, n = 1..chain_len.
/// β ≤ α yields NotApplicable. HypothesisFails, GridTooShort, GammaOutOfRange.
VanishingReport simulate_vanishing(const LevelSetFn& f, const IterationHypothesis& h, double gamma,
                                   int chain_len = 64);

struct SharpnessReport {
  double sup = 0.0;
  double arg_t = 0.0;
  double arg_s = 0.0;
  double bound = 0.0;  // (2α/e)^α
  bool ok = true;
  double ratio() const { return sup / bound; }
};

/// sup over node pairs s > t of e^{−(eˢ−eᵗ)}(s−t)^α log^α(1+e^{eᵗ}), evaluated in log space.
SharpnessReport sharpness_sup(double alpha, const numgrid::WeightedMeasure& grid);

/// a^{1−μ} − b^{1−μ} − (μ−1)(b−a)b^{−μ}, non-negative for b ≥ a > 0, μ ≥ 1.
double elementary_gap(double a, double b, double mu);

}  // namespace cmaest::degiorgi
