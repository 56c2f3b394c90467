#include "cmaest/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace cmaest::gluing {

using numgrid::Interval;
using numgrid::Jet;
using numgrid::SmoothFn;

namespace {

constexpr int kTableCells = 2048;
constexpr int kCellOrder = 16;
constexpr int kPartCells = 4096;
constexpr std::size_t kPieceProbes = 2049;
constexpr std::size_t kDeltaProbes = 513;
constexpr double kRampFraction = 0.9;

const std::pair<std::vector<double>, std::vector<double>>& gl16() {
  static const auto rule = numgrid::gauss_legendre(kCellOrder);
  return rule;
}

// ∫_a^b g by one 16-point Gauss–Legendre panel.
template <class G>
double panel(const G& g, double a, double b) {
  if (a == b) return 0.0;
  const auto& [x, w] = gl16();
  const double m = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kCellOrder; ++i) s += w[i] * g(m + r * x[i]);
  return r * s;
}

double raw_bump(double x) {
  const double d = 1.0 - x * x;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}

// Tails ∫_x^1 χ and ∫_x^1 yχ of the unnormalized bump on [0, 1].
struct BumpTables {
  std::vector<double> ic, jc;
  double Z = 0.0;

  BumpTables() : ic(kTableCells + 1, 0.0), jc(kTableCells + 1, 0.0) {
    for (int k = kTableCells; k-- > 0;) {
      const double a = static_cast<double>(k) / kTableCells;
      const double b = static_cast<double>(k + 1) / kTableCells;
      ic[k] = ic[k + 1] + panel(raw_bump, a, b);
      jc[k] = jc[k + 1] + panel([](double y) { return y * raw_bump(y); }, a, b);
    }
    Z = 2.0 * ic[0];
  }

  static const BumpTables& get() {
    static const BumpTables t;
    return t;
  }

  // Normalized tails at x ∈ [0, 1].
  std::pair<double, double> tails(double x) const {
    if (x >= 1.0) return {0.0, 0.0};
    const int k = std::min(static_cast<int>(x * kTableCells), kTableCells - 1);
    const double edge = static_cast<double>(k + 1) / kTableCells;
    const double i = ic[k + 1] + panel(raw_bump, x, edge);
    const double j = jc[k + 1] + panel([](double y) { return y * raw_bump(y); }, x, edge);
    return {i / Z, j / Z};
  }
};

// ξ: 0 outside [lo_out, hi_out], 1 on [lo_in, hi_in], smoothstep ramps between.
struct Cutoff {
  double lo_out, lo_in, hi_in, hi_out;

  Jet jet(double t) const {
    if (t <= lo_out || t >= hi_out) return {0.0, 0.0, 0.0};
    if (t >= lo_in && t <= hi_in) return {1.0, 0.0, 0.0};
    if (t < lo_in) {
      const double w = lo_in - lo_out;
      const Jet s = smoothstep(2.0 * (t - lo_out) / w - 1.0);
      const double k = 2.0 / w;
      return {s.v, s.d1 * k, s.d2 * k * k};
    }
    const double w = hi_out - hi_in;
    const Jet s = smoothstep(1.0 - 2.0 * (t - hi_in) / w);
    const double k = -2.0 / w;
    return {s.v, s.d1 * k, s.d2 * k * k};
  }
};

// f̃(t) = ∫_b^t ∫_b^y ξ(f″−c) + f(b) + f′(b)(t−b) + c/2 (t−b)².
// With P(t) = ∫_b^t w and Q(t) = ∫_b^t (x−b)w, the double integral is (t−b)P − Q.
class Extension {
 public:
  Extension(SmoothFn piece, double anchor, double c, Cutoff cut)
      : piece_(std::move(piece)), b_(anchor), c_(c), cut_(cut) {
    const Jet at = piece_.jet(b_);
    fb_ = at.v;
    f1b_ = at.d1;
    const double parts[4] = {cut_.lo_out, cut_.lo_in, cut_.hi_in, cut_.hi_out};
    edges_.push_back(parts[0]);
    for (int p = 0; p < 3; ++p) {
      for (int k = 1; k <= kPartCells; ++k)
        edges_.push_back(k == kPartCells ? parts[p + 1]
                                         : parts[p] + (parts[p + 1] - parts[p]) * k / kPartCells);
    }
    P_.assign(edges_.size(), 0.0);
    Q_.assign(edges_.size(), 0.0);
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      P_[i] = P_[i - 1] + panel([this](double x) { return w(x); }, edges_[i - 1], edges_[i]);
      Q_[i] = Q_[i - 1] +
              panel([this](double x) { return (x - b_) * w(x); }, edges_[i - 1], edges_[i]);
    }
    const auto [pa, qa] = cumulative(b_);
    Pb_ = pa;
    Qb_ = qa;
  }

  Jet jet(double t) const {
    auto [p, q] = cumulative(t);
    p -= Pb_;
    q -= Qb_;
    const double d = t - b_;
    Jet r;
    r.v = d * p - q + fb_ + f1b_ * d + 0.5 * c_ * d * d;
    r.d1 = p + f1b_ + c_ * d;
    const double xi = cut_.jet(t).v;
    r.d2 = xi == 0.0 ? c_ : xi * (piece_.d2(t) - c_) + c_;
    return r;
  }

 private:
  double w(double x) const {
    const double xi = cut_.jet(x).v;
    return xi == 0.0 ? 0.0 : xi * (piece_.d2(x) - c_);
  }

  // (∫_{lo_out}^t w, ∫_{lo_out}^t (x−b)w).
  std::pair<double, double> cumulative(double t) const {
    if (t <= edges_.front()) return {0.0, 0.0};
    if (t >= edges_.back()) return {P_.back(), Q_.back()};
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
    const auto k = static_cast<std::size_t>(it - edges_.begin()) - 1;
    const double p = P_[k] + panel([this](double x) { return w(x); }, edges_[k], t);
    const double q = Q_[k] + panel([this](double x) { return (x - b_) * w(x); }, edges_[k], t);
    return {p, q};
  }

  SmoothFn piece_;
  double b_, c_;
  Cutoff cut_;
  double fb_ = 0.0, f1b_ = 0.0, Pb_ = 0.0, Qb_ = 0.0;
  std::vector<double> edges_, P_, Q_;
};

struct Glued {
  Extension ft, gt;
  Regularizer rho;
  double b1, a2;

  Jet jet(double t) const {
    if (t <= b1) return ft.jet(t);
    if (t >= a2) return gt.jet(t);
    const Jet f = ft.jet(t), g = gt.jet(t);
    const Jet r = rho.jet(f.v - g.v);
    const double dd1 = f.d1 - g.d1;
    return {0.5 * (f.v + g.v + r.v), 0.5 * (f.d1 + g.d1 + r.d1 * dd1),
            0.5 * (f.d2 + g.d2 + r.d2 * dd1 * dd1 + r.d1 * (f.d2 - g.d2))};
  }
};

std::pair<double, double> d2_range(const SmoothFn& f, double lo, double hi, std::size_t probes) {
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (std::size_t i = 0; i < probes; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(probes - 1);
    const double v = f.d2(t);
    if (std::isnan(v)) throw Error(ErrorCode::NonFinite, "piece second derivative is NaN");
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {mn, mx};
}

std::string chain_text(const Compatibility& ch) {
  std::ostringstream os;
  os.precision(17);
  os << "compatibility chain lhs=" << ch.lhs << " mid=" << ch.mid << " rhs=" << ch.rhs
     << " (need lhs < mid < rhs)";
  return os.str();
}

// Failing δ-conditions for a convex-form problem, empty when δ is admissible.
std::vector<int> delta_failures(const GlueProblem& p, double c, double delta, double sup_f,
                                double sup_g) {
  const SmoothFn& f = p.left;
  const SmoothFn& g = p.right;
  const double a1 = p.a1(), b1 = p.b1(), a2 = p.a2(), b2 = p.b2();
  const double gap = a2 - b1;
  const double f1 = f.d1(b1), g1 = g.d1(a2), fb = f.value(b1), ga = g.value(a2);
  const double mid = (ga - fb) / gap;
  const auto [fmin, fmax] = d2_range(f, a1 - delta, b1 + delta, kDeltaProbes);
  const auto [gmin, gmax] = d2_range(g, a2 - delta, b2 + delta, kDeltaProbes);
  const Jet fr = f.jet(b1 + delta), gl = g.jet(a2 - delta);
  const double dl = gap - delta;
  const double left_gap = (ga - fr.v) / dl - fr.d1;
  const double right_gap = gl.d1 - (gl.v - fb) / dl;
  std::vector<int> bad;
  if (c > 0.0) {
    if (!(fmin >= c && gmin >= c)) bad.push_back(1);
    if (!(fmax <= sup_f + 1.0 && gmax <= sup_g + 1.0)) bad.push_back(2);
    if (!((gl.d1 - fr.d1) / (gap - 2.0 * delta) > c)) bad.push_back(3);
    const double x0 = (mid - f1) / gap, y0 = (g1 - mid) / gap;
    if (!(2.0 * left_gap / dl >= 0.5 * c + x0 && 0.5 * c + x0 > c)) bad.push_back(4);
    if (!(2.0 * right_gap / dl >= 0.5 * c + y0 && 0.5 * c + y0 > c)) bad.push_back(5);
  } else {
    if (!(fmax <= sup_f + 1.0 && gmax <= sup_g + 1.0)) bad.push_back(1);
    if (!(fr.d1 < gl.d1)) bad.push_back(2);
    if (!(2.0 * left_gap >= mid - f1 && mid - f1 > 0.0)) bad.push_back(3);
    if (!(2.0 * right_gap >= g1 - mid && g1 - mid > 0.0)) bad.push_back(4);
  }
  return bad;
}

}  // namespace

double bump(double x) { return raw_bump(x) / BumpTables::get().Z; }

double bump_normalizer() { return BumpTables::get().Z; }

Jet smoothstep(double x) {
  if (x <= -1.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  const double tail = BumpTables::get().tails(std::abs(x)).first;
  const double v = x >= 0.0 ? 1.0 - tail : tail;
  const double chi = bump(x);
  const double d = 1.0 - x * x;
  return {v, chi, chi * (-2.0 * x / (d * d))};
}

Regularizer::Regularizer(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    std::ostringstream os;
    os << "regularization radius must be > 0, got " << eps;
    throw Error(ErrorCode::NonPositiveEps, os.str());
  }
}

Jet Regularizer::jet(double t) const {
  const double x = std::abs(t) / eps_;
  const double sgn = t < 0.0 ? -1.0 : 1.0;
  if (x >= 1.0) return {std::abs(t), sgn, 0.0};
  // ρ₁(x) = x + 2(J(x) − x·I(x)) and ρ₁′(x) = 1 − 2I(x) for x ≥ 0, with I, J the tails.
  const auto [I, J] = BumpTables::get().tails(x);
  const double K = std::max(0.0, J - x * I);
  return {eps_ * (x + 2.0 * K), sgn * (1.0 - 2.0 * I), 2.0 * bump(x) / eps_};
}

SmoothFn Regularizer::fn() const {
  const Regularizer self = *this;
  return {Interval(-4.0 * eps_, 4.0 * eps_), [self](double t) { return self.jet(t); }};
}

SmoothFn rho_eps(double eps) { return Regularizer(eps).fn(); }

GlueProblem::GlueProblem(SmoothFn left_, SmoothFn right_, Mode mode_, int n_)
    : left(std::move(left_)), right(std::move(right_)), mode(mode_), n(n_) {
  if (!(a1() < b1() && b1() < a2() && a2() < b2())) {
    std::ostringstream os;
    os << "gluing needs a1 < b1 < a2 < b2, got " << a1() << ", " << b1() << ", " << a2() << ", "
       << b2();
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (mode == Mode::RadialPsh && !(a1() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "radial gluing needs a1 > 0");
  if (mode == Mode::RadialPsh && n < 1)
    throw Error(ErrorCode::InvalidArgument, "complex dimension must be >= 1");
}

SmoothFn log_transform(const SmoothFn& f) {
  auto eval = f.eval;
  return {Interval(std::log(f.domain.lo), std::log(f.domain.hi)), [eval](double s) {
            const double t = std::exp(s);
            const Jet j = eval(t);
            return Jet{j.v, t * j.d1, t * j.d1 + t * t * j.d2};
          }};
}

GlueProblem convex_form(const GlueProblem& problem) {
  if (problem.mode != Mode::RadialPsh) return problem;
  return GlueProblem(log_transform(problem.left), log_transform(problem.right),
                     Mode::StrictlyConvex, problem.n);
}

Compatibility compatibility(const GlueProblem& p) {
  Compatibility ch;
  const double fb = p.left.value(p.b1()), ga = p.right.value(p.a2());
  if (p.mode == Mode::RadialPsh) {
    ch.lhs = p.b1() * p.left.d1(p.b1());
    ch.mid = (ga - fb) / (std::log(p.a2()) - std::log(p.b1()));
    ch.rhs = p.a2() * p.right.d1(p.a2());
  } else {
    ch.lhs = p.left.d1(p.b1());
    ch.mid = (ga - fb) / (p.a2() - p.b1());
    ch.rhs = p.right.d1(p.a2());
  }
  ch.ok = ch.lhs < ch.mid && ch.mid < ch.rhs;
  return ch;
}

DeltaChoice delta_search(const GlueProblem& p, double c) {
  if (p.mode == Mode::RadialPsh)
    throw Error(ErrorCode::InvalidArgument, "delta_search expects the convex form of the problem");
  const Compatibility ch = compatibility(p);
  if (!ch.ok) throw Error(ErrorCode::IncompatiblePieces, chain_text(ch));
  const double sup_f = d2_range(p.left, p.a1(), p.b1(), kPieceProbes).second;
  const double sup_g = d2_range(p.right, p.a2(), p.b2(), kPieceProbes).second;
  const double gap = p.a2() - p.b1();
  std::vector<int> last;
  for (int j = 2; j <= 60; ++j) {
    const double delta = std::ldexp(gap, -j);
    last = delta_failures(p, c, delta, sup_f, sup_g);
    if (last.empty()) return {delta, j};
  }
  std::ostringstream os;
  os << "no delta = (a2-b1)/2^j, j=2..60, satisfies the conditions; at j=60 failing:";
  for (int k : last) os << ' ' << k;
  throw Error(ErrorCode::DeltaSearchFailed, os.str());
}

GlueResult glue(const GlueProblem& problem, std::size_t probes) {
  if (probes < 3) throw Error(ErrorCode::InvalidArgument, "glue needs at least 3 probes");
  numgrid::require_derivative_consistency(problem.left, "left piece");
  numgrid::require_derivative_consistency(problem.right, "right piece");

  GlueResult res;
  res.mode = problem.mode;
  res.chain = compatibility(problem);
  if (!res.chain.ok) throw Error(ErrorCode::IncompatiblePieces, chain_text(res.chain));

  const GlueProblem p = convex_form(problem);
  const double a1 = p.a1(), b1 = p.b1(), a2 = p.a2(), b2 = p.b2();
  const double gap = a2 - b1;
  std::tie(res.alpha1, res.sup_f2) = d2_range(p.left, a1, b1, kPieceProbes);
  std::tie(res.alpha2, res.sup_g2) = d2_range(p.right, a2, b2, kPieceProbes);

  const bool strict = p.mode == Mode::StrictlyConvex;
  if (problem.mode == Mode::RadialPsh) {
    const double fmin1 = std::min(p.left.d1(a1), p.left.d1(b1));
    const double gmin1 = std::min(p.right.d1(a2), p.right.d1(b2));
    if (!(res.alpha1 > 0.0 && res.alpha2 > 0.0 && fmin1 > 0.0 && gmin1 > 0.0))
      throw Error(ErrorCode::NotStrictlyConvexPiece,
                  "radial pieces need F' > 0 and F'' > 0 with F(s) = f(e^s)");
  } else if (strict && !(res.alpha1 > 0.0 && res.alpha2 > 0.0)) {
    std::ostringstream os;
    os << "pieces must be strictly convex: min f''=" << res.alpha1 << " min g''=" << res.alpha2;
    throw Error(ErrorCode::NotStrictlyConvexPiece, os.str());
  } else if (!strict && !(res.alpha1 >= 0.0 && res.alpha2 >= 0.0)) {
    std::ostringstream os;
    os << "pieces must be convex: min f''=" << res.alpha1 << " min g''=" << res.alpha2;
    throw Error(ErrorCode::NotStrictlyConvexPiece, os.str());
  }

  // Chain of the convex form (identical to res.chain up to rounding in radial mode).
  const double f1 = p.left.d1(b1), g1 = p.right.d1(a2);
  const double mid = (p.right.value(a2) - p.left.value(b1)) / gap;
  const double slack = std::min(mid - f1, g1 - mid);
  if (strict)
    res.c = std::min({res.alpha1 / 2.0, res.alpha2 / 2.0, (mid - f1) / gap, (g1 - mid) / gap});
  res.delta = delta_search(p, res.c);
  const double d = res.delta.delta;

  const double ramp = kRampFraction * d;
  Extension ft(p.left, b1, res.c, Cutoff{a1 - ramp, a1, b1, b1 + ramp});
  Extension gt(p.right, a2, res.c, Cutoff{a2 - ramp, a2, b2, b2 + ramp});
  res.eps = 0.5 * std::min(ft.jet(b1).v - gt.jet(b1).v, gt.jet(a2).v - ft.jet(a2).v);
  if (!(res.eps > 0.0))
    throw Error(ErrorCode::DeltaSearchFailed, "extensions do not cross: epsilon <= 0");

  auto glued = std::make_shared<const Glued>(Glued{std::move(ft), std::move(gt),
                                                   Regularizer(res.eps), b1, a2});
  const double pad = std::max(1.0, d);
  res.working = Interval(a1 - pad, b2 + pad);
  res.H = SmoothFn{res.working, [glued](double s) { return glued->jet(s); }};
  if (problem.mode == Mode::RadialPsh) {
    res.h = SmoothFn{Interval(problem.a1(), problem.b2()), [glued](double t) {
                       if (!(t > 0.0)) throw Error(ErrorCode::OutOfDomain, "radial h needs t > 0");
                       const Jet J = glued->jet(std::log(t));
                       return Jet{J.v, J.d1 / t, (J.d2 - J.d1) / (t * t)};
                     }};
  } else {
    res.h = res.H;
  }

  res.inf_bound = res.c;
  const double M = strict ? 16.0 * kM : 4.0 * kM;
  res.sup_bound = M * (g1 - f1) * (g1 - f1) / (gap * slack) + 1.0 + std::max(res.sup_f2, res.sup_g2);

  // Dense scan of H″: uniform over the working interval plus the blend region.
  res.inf_h2 = std::numeric_limits<double>::infinity();
  res.sup_h2 = -res.inf_h2;
  auto visit = [&](double s) {
    const double v = glued->jet(s).d2;
    if (v < res.inf_h2 || std::isnan(v)) {
      res.inf_h2 = v;
      res.arg_inf_h2 = s;
    }
    if (v > res.sup_h2 || std::isnan(v)) {
      res.sup_h2 = v;
      res.arg_sup_h2 = s;
    }
  };
  const double wl = res.working.lo, ww = res.working.width();
  for (std::size_t i = 0; i < probes; ++i)
    visit(wl + ww * static_cast<double>(i) / static_cast<double>(probes - 1));
  for (std::size_t i = 0; i < probes; ++i)
    visit(b1 + gap * static_cast<double>(i) / static_cast<double>(probes - 1));

  const double tol = 1e-9;
  bool ok = res.inf_h2 >= res.inf_bound - tol * std::max(1.0, std::abs(res.inf_bound)) &&
            res.sup_h2 <= res.sup_bound * (1.0 + tol);
  if (!strict) ok = ok && res.inf_h2 >= -tol;
  else ok = ok && res.inf_h2 > 0.0;

  if (problem.mode == Mode::RadialPsh) {
    const int n = problem.n;
    const double tb = problem.b1(), ta = problem.a2();
    const double denom = std::min(std::pow(tb, n), std::pow(tb, 2 * n));
    res.det_bound = std::pow(ta * problem.right.d1(ta), n - 1) / denom * res.sup_bound;
    res.det_sup = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < probes; ++i) {
      const double s = std::log(tb) + (std::log(ta) - std::log(tb)) * static_cast<double>(i) /
                                          static_cast<double>(probes - 1);
      const double t = std::exp(s);
      const Jet J = glued->jet(s);
      const double det = std::pow(J.d1, n - 1) * J.d2 / std::pow(t, n);
      if (det > res.det_sup) {
        res.det_sup = det;
        res.arg_det_sup = t;
      }
    }
    res.min_h1 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < probes; ++i) {
      const double s = a1 + (b2 - a1) * static_cast<double>(i) / static_cast<double>(probes - 1);
      res.min_h1 = std::min(res.min_h1, glued->jet(s).d1 / std::exp(s));
    }
    ok = ok && res.det_sup <= res.det_bound * (1.0 + tol) && res.min_h1 > 0.0;
  }
  res.ok = ok;
  return res;
}

}  // namespace cmaest::gluing
