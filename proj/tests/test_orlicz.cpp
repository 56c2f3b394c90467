#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "cmaest/orlicz.hpp"

using namespace cmaest;
using namespace cmaest::orlicz;
using numgrid::GridFn;
using numgrid::WeightedMeasure;
using youngfn::YoungParams;

namespace {

// Step function: cell i has weight w[i] and value v[i].
GridFn steps(const std::vector<double>& w, const std::vector<double>& v) {
  std::vector<double> t(w.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
  return GridFn(WeightedMeasure(t, w), v);
}

GridFn random_steps(std::mt19937_64& gen, double lo = -5.0, double hi = 5.0) {
  std::uniform_int_distribution<int> cells(1, 12);
  std::uniform_real_distribution<double> w(0.01, 1.0), v(lo, hi);
  const int k = cells(gen);
  std::vector<double> ws(k), vs(k);
  for (int i = 0; i < k; ++i) {
    ws[i] = w(gen);
    vs[i] = v(gen);
  }
  return steps(ws, vs);
}

}  // namespace

TEST_SUITE("orlicz") {

TEST_CASE("zero function has zero norm") {
  const auto f = steps({0.5, 0.5}, {0.0, 0.0});
  CHECK(luxemburg_norm(f, YoungParams(2, 1, 1)).norm == 0.0);
}

TEST_CASE("constant functions match independently solved norms") {
  // Roots of mass·Φ(a/c) = 1, solved by 200-step bisection in 30-digit arithmetic.
  const auto one = steps({1.0}, {1.0});
  CHECK(luxemburg_norm(one, YoungParams(1, 1, 0)).norm ==
        doctest::Approx(0.806465994236327).epsilon(1e-9));
  const auto two = steps({0.5}, {2.0});
  CHECK(luxemburg_norm(two, YoungParams(2, 1, 0.5)).norm ==
        doctest::Approx(1.25069447339662).epsilon(1e-9));
}

TEST_CASE("q = r = 0 reduces to the Lp norm") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_steps(gen);
    for (double p : {1.0, 1.5, 2.0, 3.7}) {
      double s = 0.0;
      for (std::size_t k = 0; k < f.values.size(); ++k)
        s += f.measure.weights()[k] * std::pow(std::abs(f.values[k]), p);
      const auto res = luxemburg_norm(f, YoungParams(p, 0, 0));
      CHECK(res.norm == doctest::Approx(std::pow(s, 1.0 / p)).epsilon(1e-8));
    }
  }
}

TEST_CASE("norm sits on the level set of the modular") {
  std::mt19937_64 gen(12);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_steps(gen);
    const auto res = luxemburg_norm(f, YoungParams(1.5, 2, 1));
    CHECK(res.objective_at_norm <= 1.0);
    CHECK(res.objective_at_norm == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(res.bracket_lo <= res.bracket_hi);
    CHECK(modular(f, YoungParams(1.5, 2, 1), res.bracket_lo) >= 1.0);
  }
}

TEST_CASE("norm is homogeneous and subadditive") {
  std::mt19937_64 gen(13);
  const YoungParams yp(1.2, 1.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_steps(gen);
    std::vector<double> scaled = f.values, other(f.values.size()), sum(f.values.size());
    std::uniform_real_distribution<double> v(-3.0, 3.0);
    for (std::size_t k = 0; k < scaled.size(); ++k) {
      scaled[k] *= -3.5;
      other[k] = v(gen);
      sum[k] = f.values[k] + other[k];
    }
    const double nf = luxemburg_norm(f, yp).norm;
    CHECK(luxemburg_norm(GridFn(f.measure, scaled), yp).norm == doctest::Approx(3.5 * nf).epsilon(1e-8));
    const double ng = luxemburg_norm(GridFn(f.measure, other), yp).norm;
    CHECK(luxemburg_norm(GridFn(f.measure, sum), yp).norm <= (nf + ng) * (1 + 1e-8));
  }
}

TEST_CASE("norm bound from a modular bound") {
  CHECK(norm_bound_from_integral(2.0, 8.0, YoungParams(3, 0, 0)) == doctest::Approx(4.0));
  CHECK(norm_bound_from_integral(2.0, 0.5, YoungParams(2, 1, 0)) == 2.0);
  CHECK_THROWS_AS(norm_bound_from_integral(0.0, 1.0, YoungParams()), Error);
  std::mt19937_64 gen(14);
  const YoungParams yp(2, 1, 1);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_steps(gen);
    const double c = 0.7;
    const double M = modular(f, yp, c);
    CHECK(luxemburg_norm(f, yp).norm <= norm_bound_from_integral(c, M, yp) * (1 + 1e-8));
  }
}

TEST_CASE("modular is bounded by powers of the norm") {
  std::mt19937_64 gen(15);
  for (int i = 0; i < 40; ++i) {
    const auto f = random_steps(gen, -20.0, 20.0);
    for (const YoungParams& yp : {YoungParams(1, 1, 0), YoungParams(2.5, 0.5, 3), YoungParams(1, 3, 3)}) {
      const auto b = integral_bound_from_norm(f, yp);
      CHECK(b.ok);
      CHECK(b.lhs <= b.rhs * (1 + 1e-8));
    }
  }
}

TEST_CASE("Holder-Young constant") {
  CHECK(holder_young_constant(YoungParams(1, 1, 0)) == doctest::Approx(1.5));
  CHECK(holder_young_constant(YoungParams(2, 2, 4)) == doctest::Approx(64.0));
  CHECK(holder_young_constant(YoungParams(3, 0, 0)) == 1.0);
}

TEST_CASE("Holder-Young bound on an indicator") {
  // f = 1 on a set of mass 1/100, (p,q,r) = (1,1,0): N solves 0.01·(1/N)log(1+1/N) = 1.
  const auto f = steps({0.01}, {1.0});
  const auto hy = holder_young_bound(f, YoungParams(1, 1, 0));
  CHECK(hy.lhs == doctest::Approx(0.01));
  CHECK(hy.norm == doctest::Approx(0.0341154994116514).epsilon(1e-9));
  CHECK(hy.rhs == doctest::Approx(0.0221763435779145).epsilon(1e-9));
  CHECK(hy.ok);
  CHECK_THROWS_AS(holder_young_rhs(1.0, 0.0, YoungParams(1, 1, 0)), Error);
}

TEST_CASE("Holder-Young bound on random step functions") {
  std::mt19937_64 gen(16);
  std::uniform_real_distribution<double> p(1, 3), qr(0, 3);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_steps(gen);
    const auto hy = holder_young_bound(f, YoungParams(p(gen), qr(gen), qr(gen)));
    CHECK(hy.ok);
  }
}

TEST_CASE("Young pairing") {
  // Identity Φ: Ψ ≡ 1, so Ψ^{-1} is 0 up to 1 and +∞ beyond.
  CHECK(young_psi_inverse(YoungParams(), 0.5) == 0.0);
  CHECK(std::isinf(young_psi_inverse(YoungParams(), 2.0)));
  const YoungParams yp(2, 1, 0.5);
  for (double b : {0.1, 1.0, 7.0}) {
    const double t = young_psi_inverse(yp, b);
    CHECK(young_psi(yp, t) == doctest::Approx(b).epsilon(1e-10));
  }
  for (double a : {0.0, 0.01, 0.3, 1.0, 4.0, 50.0})
    for (double b : {0.0, 0.02, 0.5, 2.0, 30.0})
      for (const YoungParams& q : {YoungParams(1, 1, 0), yp, YoungParams(3, 2, 2)})
        CHECK(young_pair_check(a, b, q).ok);
  CHECK_THROWS_AS(young_pair_check(-1.0, 1.0, yp), Error);
}

TEST_CASE("entropy of a constant density") {
  const double mass = std::numbers::pi * std::numbers::pi / 2.0;
  const auto d = steps({mass}, {1.0});
  const auto e = entropy(d, EntropyParams(2, 1));
  CHECK(e.ent == doctest::Approx(1.07619671881014).epsilon(1e-9));
  CHECK(e.bound_ok);
  CHECK(e.ent <= e.upper_bound);
  CHECK_THROWS_AS(entropy(steps({1.0}, {-1.0}), EntropyParams(2, 1)), Error);
}

TEST_CASE("Ent_{n,0} is dominated by Ent_{n,r}") {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 40; ++i) {
    const auto d = random_steps(gen, 0.0, 50.0);
    for (int n : {1, 2, 3})
      for (double r : {0.5, 1.0, 3.0}) {
        const double e0 = entropy(d, EntropyParams(n, 0)).ent;
        const double er = entropy(d, EntropyParams(n, r)).ent;
        CHECK(e0 <= ent_domination_factor(r, d.measure.mass()) * er * (1 + 1e-8));
      }
  }
}

}
