#include "cmaest/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace cmaest::degiorgi {

namespace {

constexpr double kFormsTol = 1e-12;
constexpr double kRatioTol = 1e-12;
constexpr std::size_t kMaxStoredViolations = 64;

double floored(double v) { return v < kZeroFloor ? 0.0 : v; }

void require_gamma(double alpha, double beta, double gamma, bool closed_right) {
  if (!(beta > alpha)) {
    std::ostringstream os;
    os << "the iteration lemma needs beta > alpha, got alpha=" << alpha << " beta=" << beta;
    throw Error(ErrorCode::BetaNotGreaterThanAlpha, os.str());
  }
  const double top = beta / alpha;
  const bool in = gamma > 1.0 && (closed_right ? gamma <= top : gamma < top);
  if (!in) {
    std::ostringstream os;
    os << "gamma=" << gamma << " outside (1, " << top << (closed_right ? "]" : ")");
    throw Error(ErrorCode::GammaOutOfRange, os.str());
  }
}

std::vector<std::size_t> scan_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  if (n <= kMaxScanNodes) {
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }
  idx.reserve(kMaxScanNodes);
  for (std::size_t k = 0; k < kMaxScanNodes; ++k) {
    const double pos = static_cast<double>(k) * static_cast<double>(n - 1) /
                       static_cast<double>(kMaxScanNodes - 1);
    idx.push_back(static_cast<std::size_t>(std::llround(pos)));
  }
  return idx;
}

// Pair scan of log[f(s)(s−t)^α log^β(1+1/f(t)) / f(t)] − log C.
HypothesisReport scan_pairs(const LevelSetFn& f, double C, double alpha, double beta) {
  HypothesisReport rep;
  const auto idx = scan_indices(f.grid().size());
  rep.scan_nodes = idx.size();
  const double logC = std::log(C);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const double t = f.grid()[idx[a]];
    const double ft = floored(f.values()[idx[a]]);
    if (ft == 0.0) {
      rep.pairs_skipped += idx.size() - a - 1;
      continue;
    }
    const double lt = beta * std::log(std::log1p(1.0 / ft)) - std::log(ft) - logC;
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      ++rep.pairs_checked;
      const double fs = floored(f.values()[idx[b]]);
      if (fs == 0.0) continue;
      const double s = f.grid()[idx[b]];
      const double lr = std::log(fs) + alpha * std::log(s - t) + lt;
      if (lr > worst) {
        worst = lr;
        rep.worst_t = t;
        rep.worst_s = s;
      }
      if (lr > std::log1p(kRatioTol)) {
        ++rep.violation_count;
        if (rep.violations.size() < kMaxStoredViolations)
          rep.violations.push_back({t, s, std::exp(lr)});
      }
    }
  }
  rep.worst_ratio = std::exp(worst);
  rep.ok = rep.violation_count == 0;
  return rep;
}

}  // namespace

IterationHypothesis::IterationHypothesis(double C_, double alpha_, double beta_, double t0_,
                                         double f_t0_)
    : C(C_), alpha(alpha_), beta(beta_), t0(t0_), f_t0(f_t0_) {
  if (!(C > 0.0) || !(alpha > 0.0) || !(beta > 0.0) || !(f_t0 >= 0.0) || !std::isfinite(t0)) {
    std::ostringstream os;
    os << "iteration hypothesis needs C, alpha, beta > 0 and f(t0) >= 0; got C=" << C
       << " alpha=" << alpha << " beta=" << beta << " f(t0)=" << f_t0;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

LevelSetFn::LevelSetFn(std::vector<double> grid, std::vector<double> values,
                       std::function<double(double)> exact)
    : grid_(std::move(grid)), values_(std::move(values)), exact_(std::move(exact)) {
  if (grid_.empty() || grid_.size() != values_.size())
    throw Error(ErrorCode::InvalidArgument, "level-set function needs matching, non-empty arrays");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
      throw Error(ErrorCode::InvalidArgument, "level-set values must be finite and >= 0");
    if (i > 0 && !(grid_[i] > grid_[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "level-set grid must be strictly increasing");
    if (i > 0 && values_[i] > values_[i - 1])
      throw Error(ErrorCode::InvalidArgument, "level-set values must be non-increasing");
  }
}

double LevelSetFn::at(double t) const {
  if (t < grid_.front()) {
    std::ostringstream os;
    os << "t=" << t << " below t0=" << grid_.front();
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
  if (exact_) return floored(exact_(t));
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  return floored(values_[static_cast<std::size_t>(it - grid_.begin()) - 1]);
}

LevelSetFn superlevel_measure(const numgrid::WeightedMeasure& measure, std::span<const double> u,
                              std::vector<double> grid) {
  if (u.size() != measure.size())
    throw Error(ErrorCode::InvalidArgument, "sample count must match the measure");
  std::vector<std::pair<double, double>> uw(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) uw[i] = {u[i], measure.weights()[i]};
  std::sort(uw.begin(), uw.end());
  // tail[i] = Σ_{j ≥ i} wⱼ over sorted samples.
  std::vector<double> us(uw.size()), tail(uw.size() + 1, 0.0);
  for (std::size_t i = uw.size(); i-- > 0;) {
    us[i] = uw[i].first;
    tail[i] = tail[i + 1] + uw[i].second;
  }
  auto eval = [us, tail](double t) {
    const auto it = std::upper_bound(us.begin(), us.end(), t);
    return tail[static_cast<std::size_t>(it - us.begin())];
  };
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = eval(grid[i]);
  return LevelSetFn(std::move(grid), std::move(values), eval);
}

TGamma t_gamma(const IterationHypothesis& h, double gamma) {
  require_gamma(h.alpha, h.beta, gamma, true);
  const double ratio = h.beta / h.alpha;
  const double ln2 = std::numbers::ln2;
  const double A = std::pow(h.C * std::numbers::e, 1.0 / h.alpha) * std::pow(2.0 / ln2, gamma) /
                   (gamma - 1.0);
  TGamma res;
  if (h.f_t0 == 0.0) {
    // log(1+1/f(t0)) = ∞: only the γ = β/α term of the max survives.
    const bool top = gamma == ratio;
    res.zero_limit = !top;
    res.value = res.two_branch = res.max_form = top ? A : 0.0;
    return res;
  }
  const double ell = std::log1p(1.0 / h.f_t0);
  res.branch = h.f_t0 <= 1.0 ? 1 : 2;
  if (res.branch == 1) {
    res.two_branch = A / std::pow(ell, ratio - gamma);
  } else {
    res.two_branch = std::pow(h.C * std::numbers::e, 1.0 / h.alpha) * std::pow(2.0, gamma) /
                     ((gamma - 1.0) * std::pow(ell, ratio));
  }
  res.max_form =
      A * std::max(1.0 / std::pow(ell, ratio - gamma), std::pow(ln2, gamma) / std::pow(ell, ratio));
  res.value = res.max_form;
  res.forms_agree = std::abs(res.two_branch - res.max_form) <=
                    kFormsTol * std::max(std::abs(res.two_branch), std::abs(res.max_form));
  return res;
}

double l_gamma(double C, double alpha, double beta, double gamma, double T) {
  if (!(C > 0.0) || !(alpha > 0.0) || !(T > 0.0))
    throw Error(ErrorCode::InvalidArgument, "L_gamma needs C, alpha, T > 0");
  require_gamma(alpha, beta, gamma, false);
  const double base = std::pow(C * std::numbers::e, 1.0 / alpha) / ((gamma - 1.0) * T);
  const double a1 = std::pow(base * std::pow(2.0 / std::numbers::ln2, gamma),
                             alpha / (beta - gamma * alpha));
  const double a2 = std::pow(base * std::pow(2.0, gamma), alpha / beta);
  return std::max(a1, a2);
}

HypothesisReport check_hypothesis(const LevelSetFn& f, const IterationHypothesis& h) {
  return scan_pairs(f, h.C, h.alpha, h.beta);
}

double fit_constant(const LevelSetFn& f, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw Error(ErrorCode::InvalidArgument, "fit_constant needs alpha, beta > 0");
  return scan_pairs(f, 1.0, alpha, beta).worst_ratio;
}

VanishingReport simulate_vanishing(const LevelSetFn& f, const IterationHypothesis& h, double gamma,
                                   int chain_len) {
  if (h.t0 != f.t0() || h.f_t0 != f.f_t0())
    throw Error(ErrorCode::InvalidArgument, "hypothesis (t0, f(t0)) must match the level-set data");
  VanishingReport rep;
  rep.hypothesis = check_hypothesis(f, h);
  if (!(h.beta > h.alpha)) {
    rep.status = VanishStatus::NotApplicable;
    return rep;
  }
  if (!rep.hypothesis.ok) {
    std::ostringstream os;
    os << "hypothesis fails: worst normalized ratio " << rep.hypothesis.worst_ratio << " at (t, s) = ("
       << rep.hypothesis.worst_t << ", " << rep.hypothesis.worst_s << ")";
    throw Error(ErrorCode::HypothesisFails, os.str());
  }
  rep.T = t_gamma(h, gamma);
  rep.t_vanish = f.t0() + rep.T.value;
  const auto& g = f.grid();
  const auto it = std::lower_bound(g.begin(), g.end(), rep.t_vanish);
  if (it == g.end()) {
    std::ostringstream os;
    os << "grid ends at " << g.back() << " before t0 + T_gamma = " << rep.t_vanish;
    throw Error(ErrorCode::GridTooShort, os.str());
  }
  const auto k = static_cast<std::size_t>(it - g.begin());
  rep.t_checked = g[k];
  rep.value_at_checked = floored(f.values()[k]);
  rep.status = rep.value_at_checked == 0.0 ? VanishStatus::Vanished : VanishStatus::NotVanished;

  for (int n = 1; n <= chain_len; ++n) {
    const double t = f.t0() + (1.0 - std::pow(static_cast<double>(n), 1.0 - gamma)) * rep.T.value;
    ChainStep st{n, t, f.at(t), f.f_t0() * std::exp(1.0 - n), true};
    st.ok = st.value <= st.bound * (1.0 + kRatioTol);
    rep.chain_ok = rep.chain_ok && st.ok;
    rep.chain.push_back(st);
  }
  return rep;
}

SharpnessReport sharpness_sup(double alpha, const numgrid::WeightedMeasure& grid) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "sharpness needs alpha > 0");
  SharpnessReport rep;
  rep.bound = std::pow(2.0 * alpha / std::numbers::e, alpha);
  const auto x = grid.nodes();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double et = std::exp(x[i]);
    // log log(1+e^{eᵗ}) with log(1+e^y) = y + log1p(e^{−y}).
    const double lt = alpha * std::log(et + std::log1p(std::exp(-et)));
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = x[j] - x[i];
      const double v = -et * std::expm1(d) + alpha * std::log(d) + lt;
      if (v > best) {
        best = v;
        rep.arg_t = x[i];
        rep.arg_s = x[j];
      }
    }
  }
  rep.sup = std::exp(best);
  rep.ok = rep.sup <= rep.bound * (1.0 + 1e-8);
  return rep;
}

double elementary_gap(double a, double b, double mu) {
  if (!(a > 0.0) || !(b >= a) || !(mu >= 1.0))
    throw Error(ErrorCode::InvalidArgument, "elementary inequality needs b >= a > 0 and mu >= 1");
  return std::pow(a, 1.0 - mu) - std::pow(b, 1.0 - mu) - (mu - 1.0) * (b - a) * std::pow(b, -mu);
}

}  // namespace cmaest::degiorgi
