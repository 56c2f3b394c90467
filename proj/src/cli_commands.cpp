#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>

#include "cmaest/cli.hpp"
#include "cmaest/degiorgi.hpp"
#include "cmaest/error.hpp"
#include "cmaest/gluing.hpp"
#include "cmaest/orlicz.hpp"
#include "cmaest/radialpsh.hpp"
#include "cmaest/youngfn.hpp"

namespace cmaest::cli {

using numgrid::GridFn;
using numgrid::Interval;
using youngfn::YoungParams;

namespace {

Json young_echo(double p, double q, double r) { return {{"p", p}, {"q", q}, {"r", r}}; }

// Count of steps where the sequence fails to increase strictly.
double non_increasing_steps(const std::vector<double>& xs) {
  double k = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) ++k;
  return k;
}

double max_over_min(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi / *lo;
}

}  // namespace

Report cmd_orlicz_norm(const OrliczConfig& cfg) {
  const YoungParams yp(cfg.p, cfg.q, cfg.r);
  Report rep;
  rep.command = "orlicz-norm";
  rep.inputs = {{"young", young_echo(cfg.p, cfg.q, cfg.r)}, {"source", cfg.source.echo()}};
  const GridFn f = cfg.source.load();
  if (!cfg.dump.empty()) write_atomic(cfg.dump, measure_csv(f));

  const auto lux = orlicz::luxemburg_norm(f, yp);
  const double M = orlicz::modular(f, yp, 1.0);
  const double bound = M > 0.0 ? orlicz::norm_bound_from_integral(1.0, M, yp) : 0.0;
  const auto ib = orlicz::integral_bound_from_norm(f, yp);
  rep.results = {{"norm", lux.norm},
                 {"objective_at_norm", lux.objective_at_norm},
                 {"bracket", {lux.bracket_lo, lux.bracket_hi}},
                 {"mass", f.measure.mass()},
                 {"nodes", f.measure.size()},
                 {"modular_at_1", M},
                 {"norm_bound_from_modular", bound},
                 {"modular_bound_from_norm", ib.rhs}};
  rep.table.columns = {"norm", "objective_at_norm", "mass", "modular_at_1"};
  rep.table.rows.push_back({lux.norm, lux.objective_at_norm, f.measure.mass(), M});

  rep.check("objective_at_norm_at_most_1", lux.objective_at_norm, "<=", 1.0, 0.0);
  if (lux.norm > 0.0) rep.check("objective_at_norm_is_1", lux.objective_at_norm, "==", 1.0, 1e-8);
  rep.check("norm_within_modular_bound", lux.norm, "<=", bound, orlicz::kSlack);
  rep.check("modular_within_norm_bound", ib.lhs, "<=", ib.rhs, orlicz::kSlack);
  if (!yp.has_log_factor()) {
    std::vector<double> terms(f.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
      terms[i] = f.measure.weights()[i] * std::pow(std::abs(f.values[i]), cfg.p);
    const double lp = std::pow(numgrid::pairwise_sum(terms), 1.0 / cfg.p);
    rep.results["lp_norm"] = lp;
    rep.check("norm_equals_lp_norm", lux.norm, "==", lp, 1e-8);
  }
  return rep;
}

Report cmd_holder_young(const HolderYoungConfig& cfg) {
  Report rep;
  rep.command = "holder-young";
  rep.seed = cfg.seed;
  if (!cfg.sweep) {
    const YoungParams yp(cfg.p, cfg.q, cfg.r);
    rep.inputs = {{"young", young_echo(cfg.p, cfg.q, cfg.r)}, {"source", cfg.source.echo()}};
    const GridFn f = cfg.source.load();
    const auto hy = orlicz::holder_young_bound(f, yp);
    rep.results = {{"lhs", hy.lhs},   {"rhs", hy.rhs},   {"C", hy.C},
                   {"norm", hy.norm}, {"mass", hy.mass}, {"tightness", hy.tightness()}};
    rep.table.columns = {"p", "q", "r", "mass", "norm", "C", "lhs", "rhs"};
    rep.table.rows.push_back({cfg.p, cfg.q, cfg.r, hy.mass, hy.norm, hy.C, hy.lhs, hy.rhs});
    rep.check("l1_within_holder_young_bound", hy.lhs, "<=", hy.rhs, orlicz::kSlack);
    return rep;
  }
  if (cfg.count < 1) throw Error(ErrorCode::BadConfig, "--count must be positive");
  rep.inputs = {{"sweep", true},
                {"count", cfg.count},
                {"p_range", {1.0, 3.0}},
                {"q_range", {0.0, 3.0}},
                {"r_range", {0.0, 3.0}},
                {"cells_range", {1, 16}},
                {"log10_mass_range", {-6.0, 0.0}},
                {"log10_height_range", {-3.0, 3.0}}};
  Rng rng(cfg.seed);
  rep.table.columns = {"index", "p", "q", "r", "mass", "lhs", "rhs", "slack"};
  double violations = 0.0, min_slack = std::numeric_limits<double>::infinity();
  int arg_min = -1;
  for (int i = 0; i < cfg.count; ++i) {
    const YoungParams yp(rng.uniform(1.0, 3.0), rng.uniform(0.0, 3.0), rng.uniform(0.0, 3.0));
    const int cells = rng.integer(1, 16);
    const double mass = std::pow(10.0, rng.uniform(-6.0, 0.0));
    std::vector<double> width(cells), height(cells);
    double total = 0.0;
    for (int k = 0; k < cells; ++k) {
      width[k] = rng.uniform(0.1, 1.0);
      total += width[k];
      height[k] = std::pow(10.0, rng.uniform(-3.0, 3.0));
    }
    // A step function: one node per cell carrying the cell's length.
    std::vector<double> nodes(cells);
    double left = 0.0;
    for (int k = 0; k < cells; ++k) {
      width[k] *= mass / total;
      nodes[k] = left + width[k] / 2.0;
      left += width[k];
    }
    const GridFn f(numgrid::WeightedMeasure(std::move(nodes), std::move(width)), std::move(height));
    const auto hy = orlicz::holder_young_bound(f, yp);
    const double slack = (hy.rhs - hy.lhs) / hy.rhs;
    if (!hy.ok) ++violations;
    if (slack < min_slack) {
      min_slack = slack;
      arg_min = i;
    }
    rep.table.rows.push_back({static_cast<double>(i), yp.p, yp.q, yp.r, hy.mass, hy.lhs, hy.rhs, slack});
  }
  rep.results = {{"instances", cfg.count},
                 {"violations", violations},
                 {"min_slack", min_slack},
                 {"min_slack_index", arg_min}};
  rep.check("violations", violations, "==", 0.0, 0.0);
  return rep;
}

namespace {

Report degiorgi_formula(const DeGiorgiConfig& cfg, double gamma) {
  Report rep;
  const double C = std::isnan(cfg.C) ? 1.0 : cfg.C;
  const degiorgi::IterationHypothesis h(C, cfg.alpha, cfg.beta, cfg.t0, cfg.f0);
  const auto tg = degiorgi::t_gamma(h, gamma);
  rep.results = {{"T_gamma", tg.value},
                 {"two_branch", tg.two_branch},
                 {"max_form", tg.max_form},
                 {"branch", tg.branch},
                 {"zero_limit", tg.zero_limit},
                 {"t_vanish", cfg.t0 + tg.value}};
  double L = kNaN;
  if (gamma < cfg.beta / cfg.alpha && tg.value > 0.0) {
    L = degiorgi::l_gamma(C, cfg.alpha, cfg.beta, gamma, tg.value);
    rep.results["L_gamma"] = L;
  }
  rep.table.columns = {"gamma", "T_gamma", "L_gamma"};
  rep.table.rows.push_back({gamma, tg.value, L});
  rep.check("two_branch_equals_max_form", tg.two_branch, "==", tg.max_form, 1e-12);
  return rep;
}

Report degiorgi_simulate(const DeGiorgiConfig& cfg, double gamma) {
  if (cfg.data.empty()) throw Error(ErrorCode::BadConfig, "simulate needs --data");
  if (cfg.levels < 2) throw Error(ErrorCode::BadConfig, "--levels must be at least 2");
  const GridFn d = read_measure_csv(cfg.data);
  const double umax = *std::max_element(d.values.begin(), d.values.end());
  const bool fitted = std::isnan(cfg.C);
  const auto levels = [&](double hi) {
    if (!(hi > cfg.t0)) throw Error(ErrorCode::BadConfig, "level range is empty");
    std::vector<double> grid(cfg.levels);
    for (int i = 0; i < cfg.levels; ++i) grid[i] = cfg.t0 + (hi - cfg.t0) * i / (cfg.levels - 1);
    const auto f = degiorgi::superlevel_measure(d.measure, d.values, std::move(grid));
    const double C = fitted ? degiorgi::fit_constant(f, cfg.alpha, cfg.beta) * (1.0 + 1e-9) : cfg.C;
    return std::pair{f, C};
  };
  auto [f, C] = levels(std::isnan(cfg.level_hi) ? 1.25 * umax : cfg.level_hi);
  if (std::isnan(cfg.level_hi)) {
    // Stretch the default level range past t0 + T_γ.
    const degiorgi::IterationHypothesis h0(C, cfg.alpha, cfg.beta, f.t0(), f.f_t0());
    const double reach = f.t0() + 1.25 * degiorgi::t_gamma(h0, gamma).value;
    if (reach > f.grid().back()) std::tie(f, C) = levels(reach);
  }
  const degiorgi::IterationHypothesis h(C, cfg.alpha, cfg.beta, f.t0(), f.f_t0());
  const auto v = degiorgi::simulate_vanishing(f, h, gamma, cfg.chain);

  Report rep;
  double chain_failures = 0;
  rep.table.columns = {"n", "t", "value", "bound"};
  for (const auto& s : v.chain) {
    if (!s.ok) ++chain_failures;
    rep.table.rows.push_back({static_cast<double>(s.n), s.t, s.value, s.bound});
  }
  const char* status = v.status == degiorgi::VanishStatus::Vanished      ? "vanished"
                       : v.status == degiorgi::VanishStatus::NotVanished ? "not-vanished"
                                                                         : "not-applicable";
  rep.results = {{"C", C},
                 {"C_fitted", fitted},
                 {"f_t0", f.f_t0()},
                 {"T_gamma", v.T.value},
                 {"t_vanish", v.t_vanish},
                 {"t_checked", v.t_checked},
                 {"value_at_checked", v.value_at_checked},
                 {"status", status},
                 {"hypothesis",
                  {{"worst_ratio", v.hypothesis.worst_ratio},
                   {"worst_t", v.hypothesis.worst_t},
                   {"worst_s", v.hypothesis.worst_s},
                   {"pairs_checked", v.hypothesis.pairs_checked},
                   {"pairs_skipped", v.hypothesis.pairs_skipped},
                   {"scan_nodes", v.hypothesis.scan_nodes}}}};
  rep.check("hypothesis_violations", static_cast<double>(v.hypothesis.violation_count), "==", 0.0,
            0.0);
  rep.check("value_at_t0_plus_T_gamma", v.value_at_checked, "==", 0.0, 0.0);
  rep.check("chain_violations", chain_failures, "==", 0.0, 0.0);
  return rep;
}

Report degiorgi_sharpness(const DeGiorgiConfig& cfg) {
  if (cfg.points < 2 || !(cfg.t_hi > 0.0))
    throw Error(ErrorCode::BadConfig, "sharpness needs --points >= 2 and --t-hi > 0");
  const auto grid = numgrid::uniform_grid(Interval(0.0, cfg.t_hi), cfg.points);
  const auto s = degiorgi::sharpness_sup(cfg.alpha, grid);
  Report rep;
  rep.results = {{"sup", s.sup},   {"arg_t", s.arg_t},     {"arg_s", s.arg_s},
                 {"bound", s.bound}, {"ratio", s.ratio()}};
  rep.table.columns = {"alpha", "sup", "bound", "ratio"};
  rep.table.rows.push_back({cfg.alpha, s.sup, s.bound, s.ratio()});
  rep.check("sup_within_bound", s.sup, "<=", s.bound, 1e-8);
  return rep;
}

}  // namespace

Report cmd_degiorgi(const DeGiorgiConfig& cfg) {
  const double gamma =
      std::isnan(cfg.gamma) ? 0.5 * (1.0 + cfg.beta / cfg.alpha) : cfg.gamma;
  Report rep;
  if (cfg.mode == "formula") {
    rep = degiorgi_formula(cfg, gamma);
  } else if (cfg.mode == "simulate") {
    rep = degiorgi_simulate(cfg, gamma);
  } else if (cfg.mode == "sharpness") {
    rep = degiorgi_sharpness(cfg);
  } else {
    throw Error(ErrorCode::BadConfig, "unknown degiorgi mode '" + cfg.mode + "'");
  }
  rep.command = "degiorgi";
  rep.inputs = {{"mode", cfg.mode}, {"alpha", cfg.alpha}};
  if (cfg.mode != "sharpness") {
    rep.inputs["beta"] = cfg.beta;
    rep.inputs["gamma"] = gamma;
    rep.inputs["C"] = cfg.C;
    rep.inputs["t0"] = cfg.t0;
  }
  if (cfg.mode == "formula") rep.inputs["f0"] = cfg.f0;
  if (cfg.mode == "simulate") {
    rep.inputs["data"] = cfg.data;
    rep.inputs["levels"] = cfg.levels;
    rep.inputs["level_hi"] = cfg.level_hi;
    rep.inputs["chain"] = cfg.chain;
  }
  if (cfg.mode == "sharpness") {
    rep.inputs["points"] = cfg.points;
    rep.inputs["t_hi"] = cfg.t_hi;
  }
  return rep;
}

namespace {

gluing::Mode parse_mode(const std::string& m) {
  if (m == "strict") return gluing::Mode::StrictlyConvex;
  if (m == "convex") return gluing::Mode::Convex;
  if (m == "radial") return gluing::Mode::RadialPsh;
  throw Error(ErrorCode::BadConfig, "unknown glue mode '" + m + "' (strict, convex, radial)");
}

std::vector<double> piece_params(const PieceSpec& p) {
  if (p.params.empty() && p.family == "poly") return {0.0, 0.0, 1.0};
  return p.params;
}

Json piece_echo(const PieceSpec& p) {
  return {{"family", p.family}, {"params", piece_params(p)}, {"lo", p.lo}, {"hi", p.hi}};
}

numgrid::SmoothFn piece(const PieceSpec& p) {
  if (!(p.hi > p.lo)) throw Error(ErrorCode::BadConfig, "piece needs lo < hi");
  return family(p.family, piece_params(p), Interval(p.lo, p.hi));
}

// Largest |h − f|, |h′ − f′|, |h″ − f″| over the piece, each relative to max(1, |f|).
std::array<double, 3> piece_mismatch(const numgrid::SmoothFn& h, const numgrid::SmoothFn& f) {
  std::array<double, 3> e{0.0, 0.0, 0.0};
  constexpr int kProbes = 1025;
  for (int i = 0; i < kProbes; ++i) {
    const double t = f.domain.lo + f.domain.width() * i / (kProbes - 1);
    const auto a = h.jet(t), b = f.jet(t);
    e[0] = std::max(e[0], std::abs(a.v - b.v) / std::max(1.0, std::abs(b.v)));
    e[1] = std::max(e[1], std::abs(a.d1 - b.d1) / std::max(1.0, std::abs(b.d1)));
    e[2] = std::max(e[2], std::abs(a.d2 - b.d2) / std::max(1.0, std::abs(b.d2)));
  }
  return e;
}

}  // namespace

Report cmd_glue(const GlueConfig& cfg) {
  Report rep;
  rep.command = "glue";
  rep.inputs = {{"mode", cfg.mode},          {"left", piece_echo(cfg.left)},
                {"right", piece_echo(cfg.right)}, {"n", cfg.n},
                {"resolution", cfg.resolution}, {"sample_lo", cfg.sample_lo},
                {"sample_hi", cfg.sample_hi}};
  const gluing::Mode mode = parse_mode(cfg.mode);
  const auto left = piece(cfg.left);
  const auto right = piece(cfg.right);
  const gluing::GlueProblem problem(left, right, mode, cfg.n);
  const auto g = gluing::glue(problem);
  const bool radial = mode == gluing::Mode::RadialPsh;

  rep.results = {{"chain", {{"lhs", g.chain.lhs}, {"mid", g.chain.mid}, {"rhs", g.chain.rhs}}},
                 {"alpha1", g.alpha1},
                 {"alpha2", g.alpha2},
                 {"sup_f2", g.sup_f2},
                 {"sup_g2", g.sup_g2},
                 {"c", g.c},
                 {"delta", g.delta.delta},
                 {"delta_j", g.delta.j},
                 {"eps", g.eps},
                 {"working", {g.working.lo, g.working.hi}},
                 {"inf_bound", g.inf_bound},
                 {"sup_bound", g.sup_bound},
                 {"inf_h2", g.inf_h2},
                 {"arg_inf_h2", g.arg_inf_h2},
                 {"sup_h2", g.sup_h2},
                 {"arg_sup_h2", g.arg_sup_h2}};
  if (radial) {
    rep.results["det_bound"] = g.det_bound;
    rep.results["det_sup"] = g.det_sup;
    rep.results["arg_det_sup"] = g.arg_det_sup;
    rep.results["min_h1"] = g.min_h1;
  }
  const char* second = radial ? "H2" : "h2";
  rep.check(std::string("inf_") + second + "_above_bound", g.inf_h2, ">=", g.inf_bound, 1e-9);
  rep.check(std::string("sup_") + second + "_below_bound", g.sup_h2, "<=", g.sup_bound, 1e-9);
  if (radial) {
    rep.check("det_below_bound", g.det_sup, "<=", g.det_bound, 1e-9);
    rep.check("min_h1_positive", g.min_h1, ">", 0.0, 0.0);
  }
  const auto el = piece_mismatch(g.h, left), er = piece_mismatch(g.h, right);
  rep.check("left_match_value", el[0], "<=", 1e-9, 0.0);
  rep.check("left_match_d1", el[1], "<=", 1e-7, 0.0);
  rep.check("left_match_d2", el[2], "<=", 1e-6, 0.0);
  rep.check("right_match_value", er[0], "<=", 1e-9, 0.0);
  rep.check("right_match_d1", er[1], "<=", 1e-7, 0.0);
  rep.check("right_match_d2", er[2], "<=", 1e-6, 0.0);

  if (cfg.resolution < 2) throw Error(ErrorCode::BadConfig, "--resolution must be at least 2");
  double lo = radial ? problem.a1() : g.working.lo;
  double hi = radial ? problem.b2() : g.working.hi;
  if (!std::isnan(cfg.sample_lo)) lo = cfg.sample_lo;
  if (!std::isnan(cfg.sample_hi)) hi = cfg.sample_hi;
  if (!(hi > lo)) throw Error(ErrorCode::BadConfig, "sample range is empty");
  if (radial && !(lo > 0.0)) throw Error(ErrorCode::BadConfig, "radial samples need t > 0");
  rep.table.columns = {"t", "h", "h1", "h2"};
  for (int i = 0; i < cfg.resolution; ++i) {
    const double t = lo + (hi - lo) * i / (cfg.resolution - 1);
    const auto j = g.h.jet(t);
    rep.table.rows.push_back({t, j.v, j.d1, j.d2});
  }
  if (!cfg.samples.empty()) write_atomic(cfg.samples, rep.to_csv());
  return rep;
}

namespace {

Report counterexample_detail(const CounterexampleConfig& cfg) {
  const radialpsh::CounterexampleParams params(cfg.detail_eps, cfg.n);
  const auto v = radialpsh::build_v_eps(params);
  const auto m = radialpsh::fs_measure(cfg.n, params.eps);
  const auto psi = radialpsh::density(v, m);
  const GridFn dens(m, psi);
  const double ent_lo = orlicz::entropy(dens, orlicz::EntropyParams(cfg.n, cfg.n - 1)).ent;
  const double ent_hi = orlicz::entropy(dens, orlicz::EntropyParams(cfg.n, cfg.n + 1)).ent;
  const auto psh = radialpsh::psh_check(v.profile, m);

  Report rep;
  const auto seam = [](const radialpsh::Seam& s) {
    return Json{{"t", s.t}, {"value", s.dv}, {"d1", s.d1}, {"d2", s.d2}};
  };
  rep.results = {{"chain", {{"lhs", v.glue.chain.lhs}, {"mid", v.glue.chain.mid}, {"rhs", v.glue.chain.rhs}}},
                 {"osc", -radialpsh::f_eps(params, 0.0)},
                 {"ent_low_r", ent_lo},
                 {"ent_high_r", ent_hi},
                 {"mass", m.mass()},
                 {"glue", {{"delta", v.glue.delta.delta}, {"eps", v.glue.eps}, {"det_bound", v.glue.det_bound}, {"det_sup", v.glue.det_sup}}},
                 {"seams", {seam(v.inner), seam(v.outer)}},
                 {"min_small_eigenvalue", psh.min_small},
                 {"min_big_eigenvalue", psh.min_big}};
  rep.table.columns = {"t_lo", "t_hi", "mass", "mean_density", "max_density"};
  for (const auto& a : radialpsh::density_table(params))
    rep.table.rows.push_back({a.t_lo, a.t_hi, a.mass, a.mean_density, a.max_density});

  rep.check("chain_lhs_at_most_1_12", v.glue.chain.lhs, "<=", 1.0 / 12.0, 0.0);
  rep.check("chain_mid_at_least_1_4", v.glue.chain.mid, ">=", 0.25, 0.0);
  rep.check("chain_mid_below_3_8", v.glue.chain.mid, "<", 0.375, 0.0);
  rep.check("chain_rhs_equals_1_2", v.glue.chain.rhs, "==", 0.5, 1e-15);
  rep.check("det_below_bound", v.glue.det_sup, "<=", v.glue.det_bound, 1e-9);
  rep.check("min_small_eigenvalue_positive", psh.min_small, ">", 0.0, 0.0);
  rep.check("min_big_eigenvalue_positive", psh.min_big, ">", 0.0, 0.0);
  for (const auto* s : {&v.inner, &v.outer}) {
    const std::string at = s == &v.inner ? "inner" : "outer";
    rep.check("seam_" + at + "_value", s->dv, "<=", 1e-9, 0.0);
    rep.check("seam_" + at + "_d1", s->d1, "<=", 1e-7, 0.0);
    rep.check("seam_" + at + "_d2", s->d2, "<=", 1e-6, 0.0);
  }
  return rep;
}

Report counterexample_sweep(const CounterexampleConfig& cfg) {
  const std::vector<double> eps = cfg.eps.empty() ? radialpsh::dyadic_eps(cfg.k_lo, cfg.k_hi) : cfg.eps;
  if (eps.size() < 2) throw Error(ErrorCode::BadConfig, "the sweep needs at least two eps values");
  const auto low = radialpsh::entropy_sweep(cfg.n, cfg.n - 1, eps);
  const auto high = radialpsh::entropy_sweep(cfg.n, cfg.n + 1, eps);
  Report rep;
  rep.table.columns = {"eps",          "ent_low_r", "ent_high_r", "osc",
                       "feps_integral", "feps_sup_big", "det_bound",  "det_sup"};
  std::vector<double> ent_lo, ent_hi, osc, feps_int;
  double nonfinite = 0, det_over = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto c = radialpsh::f_eps_bounds(radialpsh::CounterexampleParams(eps[i], cfg.n), cfg.t0);
    if (!c.finite) ++nonfinite;
    if (!(low[i].det_sup <= low[i].det_bound)) ++det_over;
    ent_lo.push_back(low[i].ent);
    ent_hi.push_back(high[i].ent);
    osc.push_back(low[i].osc);
    feps_int.push_back(c.integral);
    rep.table.rows.push_back({eps[i], low[i].ent, high[i].ent, low[i].osc, c.integral, c.sup_big,
                              low[i].det_bound, low[i].det_sup});
  }
  const double plateau = max_over_min(ent_lo);
  const double growth_hi = ent_hi.back() / ent_hi.front();
  const double growth_osc = osc.back() / osc.front();
  const double feps_ratio = max_over_min(feps_int);
  rep.results = {{"ent_low_r_max_over_min", plateau},
                 {"ent_high_r_final_over_initial", growth_hi},
                 {"osc_final_over_initial", growth_osc},
                 {"feps_integral_max_over_min", feps_ratio},
                 {"mass", low.front().mass}};
  rep.check("ent_low_r_max_over_min", plateau, "<=", 10.0, 0.0);
  rep.check("ent_high_r_non_increasing_steps", non_increasing_steps(ent_hi), "==", 0.0, 0.0);
  rep.check("ent_high_r_final_over_initial", growth_hi, ">=", 2.0, 0.0);
  rep.check("osc_non_increasing_steps", non_increasing_steps(osc), "==", 0.0, 0.0);
  rep.check("osc_final_over_initial", growth_osc, ">=", 2.0, 0.0);
  rep.check("feps_integral_max_over_min", feps_ratio, "<=", 10.0, 0.0);
  rep.check("feps_integral_non_finite", nonfinite, "==", 0.0, 0.0);
  rep.check("det_above_bound", det_over, "==", 0.0, 0.0);
  return rep;
}

}  // namespace

Report cmd_counterexample(const CounterexampleConfig& cfg) {
  const bool detail = !std::isnan(cfg.detail_eps);
  Report rep = detail ? counterexample_detail(cfg) : counterexample_sweep(cfg);
  rep.command = "counterexample";
  rep.inputs = {{"n", cfg.n}, {"r_low", cfg.n - 1}, {"r_high", cfg.n + 1}};
  if (detail) {
    rep.inputs["detail_eps"] = cfg.detail_eps;
  } else {
    rep.inputs["eps"] = cfg.eps.empty() ? radialpsh::dyadic_eps(cfg.k_lo, cfg.k_hi) : cfg.eps;
    rep.inputs["t0"] = cfg.t0;
  }
  return rep;
}

}  // namespace cmaest::cli
