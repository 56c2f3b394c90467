// Acceptance checks, one per criterion. Each prints a single line
//   criterion N: PASS|FAIL  <measured values>
// and the process exits non-zero if any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmaest/cli.hpp"
#include "cmaest/degiorgi.hpp"
#include "cmaest/error.hpp"
#include "cmaest/gluing.hpp"
#include "cmaest/orlicz.hpp"
#include "cmaest/radialpsh.hpp"
#include "cmaest/youngfn.hpp"

using namespace cmaest;
using numgrid::GridFn;
using numgrid::Interval;
using numgrid::Jet;
using numgrid::SmoothFn;
using numgrid::WeightedMeasure;
using youngfn::YoungParams;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

GridFn step_function(cli::Rng& rng, int cells, double mass, double hmin, double hmax) {
  std::vector<double> t(cells), w(cells), v(cells);
  double total = 0.0;
  for (int k = 0; k < cells; ++k) {
    t[k] = k;
    w[k] = rng.uniform(0.1, 1.0);
    total += w[k];
  }
  for (int k = 0; k < cells; ++k) {
    w[k] *= mass / total;
    v[k] = std::pow(10.0, rng.uniform(std::log10(hmin), std::log10(hmax)));
    if (rng.uniform(0, 1) < 0.5) v[k] = -v[k];
  }
  return GridFn(WeightedMeasure(t, w), v);
}

// 1. Luxemburg norm with q = r = 0 against the closed-form Lp norm.
Outcome criterion1() {
  Timer timer;
  cli::Rng rng(1);
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double p = rng.uniform(1.0, 3.0);
    const GridFn f = step_function(rng, rng.integer(1, 16), rng.uniform(0.1, 10.0), 1e-3, 1e3);
    double s = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
      s += f.measure.weights()[k] * std::pow(std::abs(f.values[k]), p);
    const double lp = std::pow(s, 1.0 / p);
    const double rel = std::abs(orlicz::luxemburg_norm(f, YoungParams(p, 0, 0)).norm - lp) / lp;
    worst = std::max(worst, rel);
    if (!(rel <= 1e-8)) ++bad;
  }
  const double secs = timer.seconds();
  return {bad == 0 && secs < 5.0, "mismatches=" + std::to_string(bad) + "/200 max_rel_err=" +
                                      g(worst) + " (tol 1e-8) runtime=" + g(secs) + "s (limit 5)"};
}

// 2. Hölder–Young inequality on randomized instances.
Outcome criterion2() {
  Timer timer;
  cli::Rng rng(2);
  int violations = 0;
  double min_slack = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const YoungParams yp(rng.uniform(1, 3), rng.uniform(0, 3), rng.uniform(0, 3));
    const double mass = std::pow(10.0, rng.uniform(-6.0, 0.0));
    const GridFn f = step_function(rng, rng.integer(1, 16), mass, 1e-3, 1e3);
    const auto hy = orlicz::holder_young_bound(f, yp);
    if (!(hy.lhs <= hy.rhs)) ++violations;
    min_slack = std::min(min_slack, 1.0 - hy.tightness());
  }
  const double secs = timer.seconds();
  return {violations == 0 && secs < 60.0,
          "violations=" + std::to_string(violations) + "/1000 min_slack=" + g(min_slack) +
              " runtime=" + g(secs) + "s (limit 60)"};
}

// 3. Strict convexity of Φ and of Φ(t^{1/p}).
Outcome criterion3() {
  cli::Rng rng(3);
  const auto grid = numgrid::log_grid(Interval(1e-6, 1e6), 10000);
  int bad = 0, composed = 0;
  double min_phi = INFINITY, min_comp = INFINITY;
  for (int i = 0; i < 50; ++i) {
    YoungParams yp;
    do {
      yp = YoungParams(rng.uniform(1, 3), rng.uniform(0, 3), rng.uniform(0, 3));
      if (i % 10 == 0) yp.q = 0.0;  // include pure Lp·(log log)^r members
      if (i % 10 == 5) yp.r = 0.0;
    } while (!yp.nonlinear());
    const auto rep = youngfn::check_strict_convexity(yp, grid);
    min_phi = std::min(min_phi, rep.min_phi_d2);
    if (rep.composed_checked) {
      ++composed;
      min_comp = std::min(min_comp, rep.min_composed_d2);
    }
    if (!rep.ok) ++bad;
  }
  return {bad == 0 && min_phi > 0.0 && min_comp > 0.0,
          "failures=" + std::to_string(bad) + "/50 min_phi''=" + g(min_phi) +
              " min_composed''=" + g(min_comp) + " over " + std::to_string(composed) +
              " samples with log factor"};
}

// 4. Sharpness of the iteration lemma for f(t) = e^{−eᵗ}.
Outcome criterion4() {
  const auto grid = numgrid::uniform_grid(Interval(0.0, 10.0), 2048);
  bool below = true, reached = true;
  std::string detail;
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    const auto s = degiorgi::sharpness_sup(a, grid);
    const bool b = s.sup <= s.bound * (1.0 + 1e-8);
    const bool r = s.sup >= 0.95 * s.bound;
    below = below && b;
    reached = reached && r;
    detail += " a=" + g(a) + ":ratio=" + g(s.ratio());
  }
  return {below && reached, std::string("sup<=bound:") + (below ? "yes" : "NO") +
                                " sup>=0.95*bound:" + (reached ? "yes" : "NO") + detail};
}

// 5. Vanishing at t0 + T_γ for synthetic superlevel-measure functions.
Outcome criterion5() {
  cli::Rng rng(5);
  int failures = 0, runs = 0;
  std::string first_failure;
  constexpr int kLevels = 2048;
  for (int i = 0; i < 20; ++i) {
    const int nodes = 400;
    const double amp = rng.uniform(0.5, 5.0), power = rng.uniform(0.5, 4.0);
    std::vector<double> x(nodes), w(nodes), u(nodes);
    for (int k = 0; k < nodes; ++k) {
      x[k] = (k + 0.5) / nodes;
      w[k] = rng.uniform(0.5, 1.5) / nodes;
      u[k] = amp * std::pow(1.0 - x[k], power);
    }
    const WeightedMeasure m(x, w);
    const double alpha = rng.uniform(0.5, 2.0);
    const double beta = alpha * rng.uniform(1.5, 3.0);
    const double top = beta / alpha;
    const double umax = *std::max_element(u.begin(), u.end());
    for (double gamma : {1.1, 0.5 * (1.0 + top), top}) {
      ++runs;
      try {
        // Grow the level grid until it reaches past t0 + T_γ for the constant fitted on it.
        double hi = 1.25 * umax;
        bool concluded = false;
        for (int attempt = 0; attempt < 8 && !concluded; ++attempt) {
          std::vector<double> levels(kLevels);
          for (int k = 0; k < kLevels; ++k) levels[k] = hi * k / (kLevels - 1);
          const auto f = degiorgi::superlevel_measure(m, u, levels);
          const double C = degiorgi::fit_constant(f, alpha, beta) * (1.0 + 1e-9);
          const degiorgi::IterationHypothesis h(C, alpha, beta, f.t0(), f.f_t0());
          const double reach = f.t0() + degiorgi::t_gamma(h, gamma).value;
          if (reach > hi) {
            hi = 1.25 * reach;
            continue;
          }
          if (!degiorgi::check_hypothesis(f, h).ok) throw Error(ErrorCode::HypothesisFails, "fit");
          const auto v = degiorgi::simulate_vanishing(f, h, gamma);
          if (v.status != degiorgi::VanishStatus::Vanished || v.value_at_checked != 0.0) {
            ++failures;
            if (first_failure.empty()) first_failure = " first: instance " + std::to_string(i);
          }
          concluded = true;
        }
        if (!concluded) throw Error(ErrorCode::GridTooShort, "level grid never reached t0 + T_gamma");
      } catch (const Error& e) {
        ++failures;
        if (first_failure.empty()) first_failure = std::string(" first: ") + e.what();
      }
    }
  }
  return {failures == 0 && runs == 60,
          "failures=" + std::to_string(failures) + "/" + std::to_string(runs) + first_failure};
}

// 6. Regularized absolute value.
Outcome criterion6() {
  bool ok = true;
  double peak = 0.0;
  std::string detail;
  for (double eps : {1.0, 0.1, 0.01}) {
    const gluing::Regularizer rho(eps);
    int fails[5] = {0, 0, 0, 0, 0};
    constexpr int kProbes = 20001;
    for (int i = 0; i < kProbes; ++i) {
      const double t = -3.0 * eps + 6.0 * eps * i / (kProbes - 1);
      const Jet j = rho.jet(t);
      if (std::abs(t) >= eps && std::abs(j.v - std::abs(t)) > 1e-12) ++fails[0];
      if (j.v < std::abs(t) - 1e-15) ++fails[1];
      if (std::abs(j.v - rho.jet(-t).v) > 1e-12) ++fails[2];
      if (std::abs(j.d1) > 1.0 + 1e-15) ++fails[3];
      if (j.d2 < 0.0 || j.d2 > gluing::kM / eps) ++fails[4];
      peak = std::max(peak, j.d2 * eps);
    }
    const bool smooth = numgrid::check_derivative_consistency(rho.fn(), 2049, eps).ok;
    const int total = fails[0] + fails[1] + fails[2] + fails[3] + fails[4];
    ok = ok && total == 0 && smooth;
    detail += " eps=" + g(eps) + ":fails=" + std::to_string(total) + (smooth ? "" : ",jet-mismatch");
  }
  ok = ok && peak <= 3.0;
  return {ok, "sup(rho''*eps)=" + g(peak) + " (limit 3)" + detail};
}

SmoothFn random_piece(cli::Rng& rng, double lo, double hi, double anchor, double value,
                      double slope) {
  // Strictly convex piece through (anchor, value) with the given slope there.
  const double k = rng.uniform(0.2, 3.0);
  if (rng.integer(0, 1) == 0) {
    return {Interval(lo, hi), [=](double t) {
              const double d = t - anchor;
              return Jet{value + slope * d + 0.5 * k * d * d, slope + k * d, k};
            }};
  }
  const double s = rng.uniform(0.3, 1.5);
  return {Interval(lo, hi), [=](double t) {
            const double e = std::exp(s * (t - anchor));
            const double a = k / (s * s);
            return Jet{value + slope * (t - anchor) + a * (e - 1.0 - s * (t - anchor)),
                       slope + a * s * (e - 1.0), k * e};
          }};
}

// Largest relative C² mismatch of h against a piece on 1025 probes.
std::array<double, 3> mismatch(const SmoothFn& h, const SmoothFn& f) {
  std::array<double, 3> e{0.0, 0.0, 0.0};
  for (int i = 0; i < 1025; ++i) {
    const double t = f.domain.lo + f.domain.width() * i / 1024.0;
    const Jet a = h.jet(t), b = f.jet(t);
    e[0] = std::max(e[0], std::abs(a.v - b.v) / std::max(1.0, std::abs(b.v)));
    e[1] = std::max(e[1], std::abs(a.d1 - b.d1) / std::max(1.0, std::abs(b.d1)));
    e[2] = std::max(e[2], std::abs(a.d2 - b.d2) / std::max(1.0, std::abs(b.d2)));
  }
  return e;
}

// 7. Certified bounds of the strictly convex gluing.
Outcome criterion7() {
  cli::Rng rng(7);
  int bound_fail = 0, match_fail = 0, errors = 0, not_rejected = 0;
  double worst[3] = {0, 0, 0};
  std::string first_error;
  for (int i = 0; i < 20; ++i) {
    const double a1 = rng.uniform(-2.0, 0.0), b1 = a1 + rng.uniform(0.5, 2.0);
    const double a2 = b1 + rng.uniform(0.5, 3.0), b2 = a2 + rng.uniform(0.5, 2.0);
    const double s1 = rng.uniform(-2.0, 2.0), s2 = s1 + rng.uniform(0.5, 4.0);
    const double mid = s1 + (s2 - s1) * rng.uniform(0.2, 0.8);
    const double fb = rng.uniform(-1.0, 1.0);
    const SmoothFn f = random_piece(rng, a1, b1, b1, fb, s1);
    const SmoothFn gp = random_piece(rng, a2, b2, a2, fb + mid * (a2 - b1), s2);
    try {
      const auto r = gluing::glue(gluing::GlueProblem(f, gp, gluing::Mode::StrictlyConvex));
      if (!(r.inf_h2 >= r.inf_bound * (1.0 - 1e-9) && r.sup_h2 <= r.sup_bound * (1.0 + 1e-9)))
        ++bound_fail;
      bool matched = true;
      for (const SmoothFn* piece : {&f, &gp}) {
        const auto e = mismatch(r.h, *piece);
        for (int k = 0; k < 3; ++k) worst[k] = std::max(worst[k], e[k]);
        matched = matched && e[0] <= 1e-9 && e[1] <= 1e-7 && e[2] <= 1e-6;
      }
      if (!matched) ++match_fail;
    } catch (const Error& e) {
      ++errors;
      if (first_error.empty()) first_error = std::string(" first error: ") + e.what();
    }
    // Same pieces with the right one lowered below the chord: must be rejected.
    const SmoothFn low = random_piece(rng, a2, b2, a2, fb + (s1 - 1.0) * (a2 - b1), s2);
    try {
      gluing::glue(gluing::GlueProblem(f, low, gluing::Mode::StrictlyConvex));
      ++not_rejected;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IncompatiblePieces) ++not_rejected;
    }
  }
  return {bound_fail + match_fail + errors + not_rejected == 0,
          "bound_failures=" + std::to_string(bound_fail) + " match_failures=" +
              std::to_string(match_fail) + " errors=" + std::to_string(errors) +
              " incompatible_accepted=" + std::to_string(not_rejected) + " max_mismatch=(" +
              g(worst[0]) + ", " + g(worst[1]) + ", " + g(worst[2]) + ") tol (1e-9, 1e-7, 1e-6)" +
              first_error};
}

// 8. Compatibility arithmetic of the counterexample gluing.
Outcome criterion8() {
  int bad = 0;
  double max_lhs = 0.0, max_mid = 0.0, min_mid = INFINITY;
  const double t = radialpsh::kInnerHi;
  for (double eps : radialpsh::dyadic_eps(5, 40)) {
    const radialpsh::CounterexampleParams cp(eps, 2);
    const double lhs = t * radialpsh::f_eps_d1(cp, t);
    const double mid = (std::numbers::ln2 - radialpsh::f_eps(cp, t)) / std::log(16.0);
    const auto ch = gluing::compatibility(gluing::GlueProblem(
        radialpsh::f_eps_fn(eps, Interval(radialpsh::kInnerLo, t)),
        radialpsh::fubini_study(Interval(radialpsh::kOuterLo, radialpsh::kOuterHi)),
        gluing::Mode::RadialPsh, 2));
    const bool ok = lhs <= 1.0 / 12.0 && mid < 3.0 / 8.0 && 3.0 / 8.0 < 0.5 &&
                    std::abs(ch.lhs - lhs) <= 1e-15 && std::abs(ch.mid - mid) <= 1e-14 &&
                    ch.rhs == 0.5 && ch.ok;
    if (!ok) ++bad;
    max_lhs = std::max(max_lhs, lhs);
    max_mid = std::max(max_mid, mid);
    min_mid = std::min(min_mid, mid);
  }
  return {bad == 0, "failures=" + std::to_string(bad) + "/36 max (1/16)f'(1/16)=" + g(max_lhs) +
                        " (<= 1/12) mid in [" + g(min_mid) + ", " + g(max_mid) + "] (< 3/8)"};
}

bool strictly_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) return false;
  return true;
}

// 9. Bounded entropy against growing oscillation.
Outcome criterion9() {
  Timer timer;
  const auto eps = radialpsh::dyadic_eps(5, 40);
  bool ok = true;
  std::string detail;
  for (int n : {2, 3}) {
    const auto low = radialpsh::entropy_sweep(n, n - 1, eps);
    const auto high = radialpsh::entropy_sweep(n, n + 1, eps);
    std::vector<double> lo, hi, osc;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      lo.push_back(low[i].ent);
      hi.push_back(high[i].ent);
      osc.push_back(low[i].osc);
    }
    const auto [mn, mx] = std::minmax_element(lo.begin(), lo.end());
    const double plateau = *mx / *mn;
    const double osc_growth = osc.back() / osc.front();
    const double hi_growth = hi.back() / hi.front();
    const bool p1 = plateau <= 10.0;
    const bool p2 = strictly_increasing(osc) && osc_growth >= 2.0;
    const bool p3 = strictly_increasing(hi) && hi_growth >= 2.0;
    ok = ok && p1 && p2 && p3;
    detail += " n=" + std::to_string(n) + ": ent(r=n-1) max/min=" + g(plateau) +
              (p1 ? "" : "[FAIL]") + " osc final/initial=" + g(osc_growth) +
              (strictly_increasing(osc) ? "" : " non-monotone") + (p2 ? "" : "[FAIL]") +
              " ent(r=n+1) final/initial=" + g(hi_growth) +
              (strictly_increasing(hi) ? "" : " non-monotone") + (p3 ? "" : "[FAIL]") + ";";
  }
  const double secs = timer.seconds();
  ok = ok && secs < 600.0;
  return {ok, "runtime=" + g(secs) + "s (limit 600);" + detail};
}

// 10. Uniform bound on the weighted Φ(F) integral of f_ε.
Outcome criterion10() {
  bool ok = true;
  std::string detail;
  for (int n : {2, 3}) {
    std::vector<double> vals;
    bool finite = true;
    for (double eps : radialpsh::dyadic_eps(5, 40)) {
      const auto c = radialpsh::f_eps_bounds(radialpsh::CounterexampleParams(eps, n), 0.125);
      finite = finite && c.finite;
      vals.push_back(c.integral);
    }
    const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    const double ratio = *mx / *mn;
    ok = ok && finite && ratio <= 10.0;
    detail += " n=" + std::to_string(n) + ": finite=" + (finite ? "yes" : "NO") + " range [" +
              g(*mn) + ", " + g(*mx) + "] max/min=" + g(ratio) + (ratio <= 10.0 ? "" : "[FAIL]") +
              ";";
  }
  return {ok, "limit max/min <= 10;" + detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 11. Byte-identical CLI reports for identical seeds.
Outcome criterion11(const std::string& cli_path) {
  if (cli_path.empty()) return {false, "no --cli path given"};
  const auto dir = std::filesystem::temp_directory_path();
  const std::vector<std::string> commands = {
      "holder-young --sweep --count 200 --seed 7",
      "holder-young --sweep --count 200 --seed 7 --format csv",
      "orlicz-norm --family log1p --p 1.5 --q 1 --r 2 --hi 5 --seed 7",
      "glue --mode radial --left-family feps --left-params 0.0009765625 --left-lo 0.015625 "
      "--left-hi 0.0625 --right-family log1p --right-lo 1 --right-hi 4 --seed 7"};
  int identical = 0;
  std::string detail;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string reports[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / ("cmaest_accept_" + std::to_string(i) + "_" + std::to_string(rep));
      std::filesystem::remove(out);
      const std::string cmd =
          "\"" + cli_path + "\" " + commands[i] + " --out \"" + out.string() + "\" 2>/dev/null";
      const int status = std::system(cmd.c_str());
      if (status != 0) detail += " [exit " + std::to_string(status) + ": " + commands[i] + "]";
      reports[rep] = slurp(out);
      std::filesystem::remove(out);
    }
    if (!reports[0].empty() && reports[0] == reports[1]) ++identical;
  }
  return {identical == static_cast<int>(commands.size()),
          "identical=" + std::to_string(identical) + "/" + std::to_string(commands.size()) + detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> criteria;
  std::string cli_path;
  app.add_option("--criterion", criteria, "Criterion numbers (all when omitted)")
      ->check(CLI::Range(1, 11));
  app.add_option("--cli", cli_path, "Path of the cmaest executable");
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty())
    for (int k = 1; k <= 11; ++k) criteria.push_back(k);

  const std::vector<std::function<Outcome()>> checks = {
      criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
      criterion7, criterion8, criterion9, criterion10, [&] { return criterion11(cli_path); }};
  bool all = true;
  for (int k : criteria) {
    Outcome o;
    try {
      o = checks[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
