#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cmaest/cli.hpp"
#include "cmaest/error.hpp"
#include "cmaest/radialpsh.hpp"

namespace cmaest::cli {

using numgrid::Interval;
using numgrid::Jet;
using numgrid::SmoothFn;

Verdict make_verdict(std::string name, double lhs, std::string relation, double rhs,
                     double tolerance) {
  const double slack = tolerance * std::max(1.0, std::abs(rhs));
  bool pass = false;
  if (relation == "<=") {
    pass = lhs <= rhs + slack;
  } else if (relation == ">=") {
    pass = lhs >= rhs - slack;
  } else if (relation == "==") {
    pass = std::abs(lhs - rhs) <= slack;
  } else if (relation == "<") {
    pass = lhs < rhs;
  } else if (relation == ">") {
    pass = lhs > rhs;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown relation '" + relation + "'");
  }
  return {std::move(name), lhs, std::move(relation), rhs, tolerance, pass};
}

void Report::check(std::string name, double lhs, std::string relation, double rhs,
                   double tolerance) {
  verdicts.push_back(make_verdict(std::move(name), lhs, std::move(relation), rhs, tolerance));
}

bool Report::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Json Report::to_json() const {
  Json j;
  j["tool"] = "cmaest";
  j["command"] = command;
  j["inputs"] = inputs;
  j["seed"] = seed;
  j["prng"] = "mt19937_64";
  j["results"] = results;
  Json t;
  t["columns"] = table.columns;
  t["rows"] = table.rows;
  j["table"] = std::move(t);
  Json vs = Json::array();
  for (const Verdict& v : verdicts) {
    Json e;
    e["name"] = v.name;
    e["lhs"] = v.lhs;
    e["relation"] = v.relation;
    e["rhs"] = v.rhs;
    e["tolerance"] = v.tolerance;
    e["pass"] = v.pass;
    vs.push_back(std::move(e));
  }
  j["verdicts"] = std::move(vs);
  j["pass"] = pass();
  if (!std::isnan(elapsed_s)) j["metadata"] = {{"elapsed_s", elapsed_s}};
  return j;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string Report::to_csv() const {
  std::string s;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) s += ',';
    s += table.columns[i];
  }
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += fmt(row[i]);
    }
    s += '\n';
  }
  return s;
}

double Rng::uniform(double a, double b) {
  const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

namespace {

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::BadConfig, what); }

void expect_params(const std::string& name, const std::vector<double>& params, std::size_t lo,
                   std::size_t hi) {
  if (params.size() < lo || params.size() > hi) {
    std::ostringstream os;
    os << "family '" << name << "' takes " << lo << ".." << hi << " parameters, got "
       << params.size();
    bad_config(os.str());
  }
}

}  // namespace

SmoothFn family(const std::string& name, const std::vector<double>& params,
                const Interval& domain) {
  if (name == "poly") {
    expect_params(name, params, 1, 64);
    return {domain, [c = params](double t) {
              Jet j{0.0, 0.0, 0.0};
              for (std::size_t k = c.size(); k-- > 0;) {
                j.d2 = j.d2 * t + 2.0 * j.d1;
                j.d1 = j.d1 * t + j.v;
                j.v = j.v * t + c[k];
              }
              return j;
            }};
  }
  if (name == "log1p") {
    expect_params(name, params, 0, 1);
    if (domain.lo <= -1.0) bad_config("log1p needs a domain inside (-1, inf)");
    const double a = params.empty() ? 1.0 : params[0];
    return {domain, [a](double t) {
              const double w = 1.0 / (1.0 + t);
              return Jet{a * std::log1p(t), a * w, -a * w * w};
            }};
  }
  if (name == "feps") {
    expect_params(name, params, 1, 2);
    const double eps = params[0];
    if (!(eps > 0.0)) bad_config("feps needs eps > 0");
    if (domain.lo <= -eps) bad_config("feps needs a domain inside (-eps, inf)");
    const double kappa = params.size() > 1 ? params[1] : radialpsh::kFepsScale;
    return radialpsh::f_eps_fn(eps, domain, kappa);
  }
  if (name == "exp-exp") {
    expect_params(name, params, 0, 0);
    return {domain, [](double t) {
              const double e = std::exp(t);
              const double v = std::exp(-e);
              return Jet{v, -e * v, (e * e - e) * v};
            }};
  }
  bad_config("unknown family '" + name + "' (known: poly, log1p, feps, exp-exp)");
}

std::vector<double> Source::effective_params() const {
  if (params.empty() && family == "poly") return {1.0};
  return params;
}

numgrid::GridFn Source::load() const {
  if (!data.empty()) return read_measure_csv(data);
  if (!(hi > lo)) bad_config("source needs lo < hi");
  const SmoothFn f = cli::family(family, effective_params(), Interval(lo, hi));
  return numgrid::GridFn(numgrid::gauss_measure(Interval(lo, hi), panels, order),
                         [&f](double t) { return f.jet(t).v; });
}

Json Source::echo() const {
  if (!data.empty()) return {{"data", data}};
  return {{"family", family}, {"params", effective_params()}, {"lo", lo},
          {"hi", hi},         {"panels", panels}, {"order", order}};
}

namespace {

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

[[noreturn]] void format_error(const std::string& label, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << label << ":" << line << ": " << what;
  throw Error(ErrorCode::FileFormat, os.str());
}

}  // namespace

numgrid::GridFn parse_measure_csv(std::istream& in, const std::string& label) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) format_error(label, 1, "empty file, expected header t,weight,value");
  ++lineno;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  {
    std::string header;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) header += c;
    if (header != "t,weight,value") format_error(label, lineno, "expected header t,weight,value");
  }
  std::vector<double> t, w, v;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double x[3];
    int k = 0;
    while (std::getline(row, cell, ',')) {
      if (k == 3) format_error(label, lineno, "more than 3 columns");
      const std::string s = trim(cell);
      char* end = nullptr;
      x[k] = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x[k]))
        format_error(label, lineno, "not a finite number: '" + s + "'");
      ++k;
    }
    if (k != 3) format_error(label, lineno, "expected 3 columns");
    t.push_back(x[0]);
    w.push_back(x[1]);
    v.push_back(x[2]);
  }
  if (t.empty()) format_error(label, lineno, "no data rows");
  try {
    return numgrid::GridFn(numgrid::WeightedMeasure(std::move(t), std::move(w)), std::move(v));
  } catch (const Error& e) {
    format_error(label, lineno, e.what());
  }
}

numgrid::GridFn read_measure_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileFormat, "cannot open " + path);
  return parse_measure_csv(in, path);
}

std::string measure_csv(const numgrid::GridFn& f) {
  std::string s = "t,weight,value\n";
  const auto& m = f.measure;
  for (std::size_t i = 0; i < m.size(); ++i)
    s += fmt(m.nodes()[i]) + ',' + fmt(m.weights()[i]) + ',' + fmt(f.values[i]) + '\n';
  return s;
}

void write_atomic(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::BadConfig, "cannot write " + tmp);
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::BadConfig, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::BadConfig, "cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace cmaest::cli
