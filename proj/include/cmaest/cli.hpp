#pragma once

// Command-line front end: typed configs for each subcommand, the report
// structure they fill, and the file helpers they share.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmaest/numgrid.hpp"

namespace cmaest::cli {

using Json = nlohmann::ordered_json;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Format { Json, Csv };

/// One numerical assertion. Relations "<=", ">=", "==" pass within
/// tolerance·max(1, |rhs|); "<" and ">" are strict and ignore the tolerance.
struct Verdict {
  std::string name;
  double lhs = 0.0;
  std::string relation;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Verdict make_verdict(std::string name, double lhs, std::string relation, double rhs,
                     double tolerance);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::uint64_t seed = 0;
  Json results = Json::object();
  Table table;
  std::vector<Verdict> verdicts;
  double elapsed_s = kNaN;  // written only when set

  void check(std::string name, double lhs, std::string relation, double rhs, double tolerance);
  bool pass() const;
  Json to_json() const;
  /// The table as CSV with a header row.
  std::string to_csv() const;
};

/// mt19937_64 with a fixed 53-bit mapping to [a, b), identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b);
  int integer(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 gen_;
};

/// Builtin function families: poly (coefficients c0..ck), log1p ([a] → a·log(1+t),
/// a = 1 by default), feps ([ε] or [ε, κ]), exp-exp (e^{−eᵗ}). BadConfig otherwise.
numgrid::SmoothFn family(const std::string& name, const std::vector<double>& params,
                         const numgrid::Interval& domain);

/// Either a CSV file or a builtin family sampled on Gauss–Legendre panels.
struct Source {
  std::string data;
  std::string family = "poly";
  std::vector<double> params;  // empty: the constant 1 for poly, the family default otherwise
  double lo = 0.0;
  double hi = 1.0;
  int panels = 64;
  int order = 16;

  numgrid::GridFn load() const;
  Json echo() const;
  std::vector<double> effective_params() const;
};

/// Reads "t,weight,value" rows (header required). FileFormat on malformed input.
numgrid::GridFn read_measure_csv(const std::string& path);
numgrid::GridFn parse_measure_csv(std::istream& in, const std::string& label);
std::string measure_csv(const numgrid::GridFn& f);

/// Writes to a sibling temporary file and renames it over `path`; "-" is stdout.
void write_atomic(const std::string& path, const std::string& content);

/// "%.17g".
std::string fmt(double x);

struct OrliczConfig {
  Source source;
  double p = 1.0;
  double q = 0.0;
  double r = 0.0;
  std::string dump;  // optional: write the sampled (t, weight, value) grid here
};

struct HolderYoungConfig {
  Source source;
  double p = 1.0;
  double q = 0.0;
  double r = 0.0;
  bool sweep = false;
  int count = 1000;
  std::uint64_t seed = 0;
};

struct DeGiorgiConfig {
  std::string mode = "formula";  // formula | simulate | sharpness
  double C = kNaN;               // simulate: fitted from the data when unset
  double alpha = 1.0;
  double beta = 2.0;
  double gamma = kNaN;  // midpoint of (1, β/α] when unset
  double t0 = 0.0;
  double f0 = 1.0;
  std::string data;
  int levels = 2048;
  double level_hi = kNaN;  // 1.25·max u when unset
  int chain = 64;
  int points = 2048;
  double t_hi = 10.0;
};

struct PieceSpec {
  std::string family = "poly";
  std::vector<double> params;  // empty: t² for poly, the family default otherwise
  double lo = 0.0;
  double hi = 1.0;
};

struct GlueConfig {
  std::string mode = "strict";  // strict | convex | radial
  PieceSpec left{"poly", {}, 0.0, 1.0};
  PieceSpec right{"poly", {}, 3.0, 4.0};
  int n = 2;
  std::string samples;
  int resolution = 1025;
  double sample_lo = kNaN;
  double sample_hi = kNaN;
};

struct CounterexampleConfig {
  int n = 2;
  int k_lo = 5;
  int k_hi = 40;
  std::vector<double> eps;  // overrides the dyadic list when non-empty
  double t0 = 0.125;
  double detail_eps = kNaN;  // single-ε annulus table when set
};

Report cmd_orlicz_norm(const OrliczConfig& cfg);
Report cmd_holder_young(const HolderYoungConfig& cfg);
Report cmd_degiorgi(const DeGiorgiConfig& cfg);
Report cmd_glue(const GlueConfig& cfg);
Report cmd_counterexample(const CounterexampleConfig& cfg);

/// Parses arguments and runs one subcommand. Returns 0 when every verdict
/// passes, 1 when some verdict fails, 2 on errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmaest::cli
