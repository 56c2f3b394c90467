#include <chrono>
#include <ostream>

#include "CLI11.hpp"
#include "cmaest/cli.hpp"
#include "cmaest/error.hpp"

namespace cmaest::cli {

namespace {

struct Output {
  std::string format = "json";
  std::string out = "-";
  std::uint64_t seed = 0;
  bool timing = false;
};

void add_output(CLI::App* sub, Output& o) {
  sub->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", o.out, "Report path, '-' for stdout")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed of the mt19937_64 stream")->capture_default_str();
  sub->add_flag("--timing", o.timing, "Add wall-clock time in a metadata block");
}

void add_source(CLI::App* sub, Source& s) {
  sub->add_option("--data", s.data, "CSV file with columns t,weight,value");
  sub->add_option("--family", s.family, "Builtin family: poly, log1p, feps, exp-exp")
      ->capture_default_str();
  sub->add_option("--params", s.params, "Family parameters")->delimiter(',')->capture_default_str();
  sub->add_option("--lo", s.lo, "Left end of the sampled interval")->capture_default_str();
  sub->add_option("--hi", s.hi, "Right end of the sampled interval")->capture_default_str();
  sub->add_option("--panels", s.panels, "Gauss-Legendre panels")->capture_default_str();
  sub->add_option("--order", s.order, "Gauss-Legendre order")->capture_default_str();
}

void add_young(CLI::App* sub, double& p, double& q, double& r) {
  sub->add_option("--p", p, "Power exponent")->capture_default_str();
  sub->add_option("--q", q, "log exponent")->capture_default_str();
  sub->add_option("--r", r, "log log exponent")->capture_default_str();
}

void add_piece(CLI::App* sub, const std::string& side, PieceSpec& p) {
  sub->add_option("--" + side + "-family", p.family, "Builtin family")->capture_default_str();
  sub->add_option("--" + side + "-params", p.params, "Family parameters")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--" + side + "-lo", p.lo, "Left end of the piece")->capture_default_str();
  sub->add_option("--" + side + "-hi", p.hi, "Right end of the piece")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orlicz norms, De Giorgi iteration and smooth gluing checks", "cmaest"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file of option values; flags override it");

  Output output;
  OrliczConfig orlicz_cfg;
  HolderYoungConfig hy_cfg;
  DeGiorgiConfig dg_cfg;
  GlueConfig glue_cfg;
  CounterexampleConfig cx_cfg;

  auto* orlicz = app.add_subcommand("orlicz-norm", "Luxemburg norm and its modular bounds");
  add_output(orlicz, output);
  add_source(orlicz, orlicz_cfg.source);
  add_young(orlicz, orlicz_cfg.p, orlicz_cfg.q, orlicz_cfg.r);
  orlicz->add_option("--dump", orlicz_cfg.dump, "Also write the sampled grid as t,weight,value");

  auto* hy = app.add_subcommand("holder-young", "L1 bound on a set of small measure");
  add_output(hy, output);
  add_source(hy, hy_cfg.source);
  add_young(hy, hy_cfg.p, hy_cfg.q, hy_cfg.r);
  hy->add_flag("--sweep", hy_cfg.sweep, "Randomized instances instead of a single source");
  hy->add_option("--count", hy_cfg.count, "Instances in sweep mode")->capture_default_str();

  auto* dg = app.add_subcommand("degiorgi", "Vanishing threshold, level-set simulation, sharpness");
  add_output(dg, output);
  dg->add_option("--mode", dg_cfg.mode, "formula, simulate or sharpness")
      ->check(CLI::IsMember({"formula", "simulate", "sharpness"}))
      ->capture_default_str();
  dg->add_option("--C", dg_cfg.C, "Hypothesis constant (simulate fits it when omitted)");
  dg->add_option("--alpha", dg_cfg.alpha)->capture_default_str();
  dg->add_option("--beta", dg_cfg.beta)->capture_default_str();
  dg->add_option("--gamma", dg_cfg.gamma, "Exponent in (1, beta/alpha]; midpoint when omitted");
  dg->add_option("--t0", dg_cfg.t0)->capture_default_str();
  dg->add_option("--f0", dg_cfg.f0, "f(t0) for the formula mode")->capture_default_str();
  dg->add_option("--data", dg_cfg.data, "Samples t,weight,value of u for the simulate mode");
  dg->add_option("--levels", dg_cfg.levels, "Level grid size")->capture_default_str();
  dg->add_option("--level-hi", dg_cfg.level_hi, "Top of the level grid (1.25 max u by default)");
  dg->add_option("--chain", dg_cfg.chain, "Induction steps checked")->capture_default_str();
  dg->add_option("--points", dg_cfg.points, "Sharpness grid size")->capture_default_str();
  dg->add_option("--t-hi", dg_cfg.t_hi, "Sharpness grid end")->capture_default_str();

  auto* glue = app.add_subcommand("glue", "Glue two pieces into one convex or radially psh function");
  add_output(glue, output);
  glue->add_option("--mode", glue_cfg.mode, "strict, convex or radial")
      ->check(CLI::IsMember({"strict", "convex", "radial"}))
      ->capture_default_str();
  add_piece(glue, "left", glue_cfg.left);
  add_piece(glue, "right", glue_cfg.right);
  glue->add_option("--n", glue_cfg.n, "Complex dimension (radial mode)")->capture_default_str();
  glue->add_option("--samples", glue_cfg.samples, "Also write t,h,h1,h2 samples here");
  glue->add_option("--resolution", glue_cfg.resolution, "Sample count")->capture_default_str();
  glue->add_option("--sample-lo", glue_cfg.sample_lo, "Sample range start");
  glue->add_option("--sample-hi", glue_cfg.sample_hi, "Sample range end");

  auto* cx = app.add_subcommand("counterexample", "Entropy and oscillation sweep over eps");
  add_output(cx, output);
  cx->add_option("--n", cx_cfg.n, "Complex dimension")->capture_default_str();
  cx->add_option("--k-lo", cx_cfg.k_lo, "First k in eps = 2^-k")->capture_default_str();
  cx->add_option("--k-hi", cx_cfg.k_hi, "Last k in eps = 2^-k")->capture_default_str();
  cx->add_option("--eps", cx_cfg.eps, "Explicit eps list")->delimiter(',');
  cx->add_option("--t0", cx_cfg.t0, "Left end for sup of f' + t f''")->capture_default_str();
  cx->add_option("--detail-eps", cx_cfg.detail_eps, "Single eps: per-annulus density table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report rep;
    if (orlicz->parsed()) {
      rep = cmd_orlicz_norm(orlicz_cfg);
    } else if (hy->parsed()) {
      hy_cfg.seed = output.seed;
      rep = cmd_holder_young(hy_cfg);
    } else if (dg->parsed()) {
      rep = cmd_degiorgi(dg_cfg);
    } else if (glue->parsed()) {
      rep = cmd_glue(glue_cfg);
    } else {
      rep = cmd_counterexample(cx_cfg);
    }
    rep.seed = output.seed;
    if (output.timing)
      rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = output.format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n";
    if (output.out == "-") {
      out << text << std::flush;
    } else {
      write_atomic(output.out, text);
    }
    std::size_t passed = 0;
    for (const auto& v : rep.verdicts) {
      if (v.pass) {
        ++passed;
      } else {
        err << "FAIL " << v.name << ": " << fmt(v.lhs) << ' ' << v.relation << ' ' << fmt(v.rhs)
            << " (tol " << fmt(v.tolerance) << ")\n";
      }
    }
    err << rep.command << ": " << passed << "/" << rep.verdicts.size() << " verdicts pass\n";
    return rep.pass() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cmaest::cli
