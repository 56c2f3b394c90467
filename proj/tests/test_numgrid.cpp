#include <cmath>
#include <numeric>

#include "doctest.h"

#include "cmaest/numgrid.hpp"

using namespace cmaest;
using namespace cmaest::numgrid;

TEST_SUITE("numgrid") {

TEST_CASE("gauss_legendre order 2 and 3 closed forms") {
  auto [x2, w2] = gauss_legendre(2);
  REQUIRE(x2.size() == 2);
  CHECK(x2[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(x2[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(w2[0] == doctest::Approx(1.0).epsilon(1e-15));

  auto [x3, w3] = gauss_legendre(3);
  CHECK(std::abs(x3[1]) < 1e-15);
  CHECK(x3[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(w3[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(w3[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre order 5 closed form") {
  auto [x, w] = gauss_legendre(5);
  const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  CHECK(x[3] == doctest::Approx(a).epsilon(1e-14));
  CHECK(x[4] == doctest::Approx(b).epsilon(1e-14));
  CHECK(w[3] == doctest::Approx(wa).epsilon(1e-14));
  CHECK(w[4] == doctest::Approx(wb).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-14));
}

TEST_CASE("gauss_legendre integrates polynomials up to degree 2n-1 exactly") {
  for (int order : {2, 4, 8, 16, 33, 64}) {
    auto [x, w] = gauss_legendre(order);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-13));
    for (int d = 0; d <= 2 * order - 1; d += 3) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("gauss_legendre rejects orders outside 2..64") {
  CHECK_THROWS_AS(gauss_legendre(1), Error);
  CHECK_THROWS_AS(gauss_legendre(65), Error);
}

TEST_CASE("gauss_measure integrates exp on an interval") {
  const auto m = gauss_measure(Interval(0.0, 2.0), 8, 8);
  CHECK(m.mass() == doctest::Approx(2.0).epsilon(1e-14));
  const GridFn f(m, [](double t) { return std::exp(t); });
  CHECK(integrate(f) == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("geometric_measure resolves an integrable endpoint singularity") {
  const auto m = geometric_measure(Interval(0.0, 1.0), 100, 16);
  CHECK(m.mass() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m.nodes().front() > 0.0);
  const GridFn f(m, [](double t) { return std::log(t); });
  CHECK(integrate(f) == doctest::Approx(-1.0).epsilon(1e-12));
  const GridFn g(m, [](double t) { return 1.0 / std::sqrt(t); });
  CHECK(integrate(g) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrate is linear") {
  const auto m = gauss_measure(Interval(-1.0, 3.0), 5, 7);
  const auto f = [](double t) { return std::sin(t); };
  const auto g = [](double t) { return t * t * t; };
  const double lhs = integrate(GridFn(m, [&](double t) { return 2.5 * f(t) - 0.75 * g(t); }));
  const double rhs = 2.5 * integrate(GridFn(m, f)) - 0.75 * integrate(GridFn(m, g));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
}

TEST_CASE("integrate refuses NaN values") {
  const auto m = uniform_grid(Interval(0.0, 1.0), 5);
  CHECK_THROWS_AS(integrate(GridFn(m, [](double t) { return t > 0.5 ? std::nan("") : t; })),
                  Error);
}

TEST_CASE("WeightedMeasure validates nodes and weights") {
  CHECK_THROWS_AS(WeightedMeasure({0.0, 0.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(WeightedMeasure({0.0, 1.0}, {1.0, -1.0}), Error);
  CHECK_THROWS_AS(WeightedMeasure({0.0, 1.0}, {1.0}), Error);
  const WeightedMeasure m({0.0, 1.0, 2.0}, {0.5, 1.0, 0.5});
  CHECK(m.mass() == 2.0);
}

TEST_CASE("concat keeps order and adds masses") {
  const WeightedMeasure parts[] = {uniform_grid(Interval(0.0, 1.0), 3),
                                   uniform_grid(Interval(2.0, 3.0), 3)};
  const auto m = WeightedMeasure::concat(parts);
  CHECK(m.size() == 6);
  CHECK(m.mass() == doctest::Approx(2.0));
  CHECK(m.nodes()[3] == 2.0);
}

TEST_CASE("uniform and log grids have trapezoid weights") {
  const auto u = uniform_grid(Interval(0.0, 1.0), 11);
  CHECK(u.weights().front() == doctest::Approx(0.05));
  CHECK(u.weights()[5] == doctest::Approx(0.1));
  const auto l = log_grid(Interval(1e-3, 1e3), 7);
  CHECK(l.nodes()[3] == doctest::Approx(1.0));
  CHECK(l.nodes().back() == doctest::Approx(1e3));
  CHECK(l.mass() == doctest::Approx(1e3 - 1e-3));
  CHECK_THROWS_AS(log_grid(Interval(0.0, 1.0), 5), Error);
}

TEST_CASE("pairwise_sum matches the exact sum of representable values") {
  std::vector<double> xs(1000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i) * 0.25;
  CHECK(pairwise_sum(xs) == 999.0 * 1000.0 / 2.0 * 0.25);
  CHECK(pairwise_sum({}) == 0.0);
}

TEST_CASE("bisect_monotone finds sqrt(2) and respects direction") {
  const double r = bisect_monotone([](double c) { return c * c; }, 2.0, 0.0, 2.0,
                                   Direction::Increasing, 1e-14);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  const double s = bisect_monotone([](double c) { return 1.0 / c; }, 4.0, 0.01, 10.0,
                                   Direction::Decreasing, 1e-14);
  CHECK(s == doctest::Approx(0.25).epsilon(1e-12));
  const auto b = bisect_bracket([](double c) { return c; }, 0.3, 0.0, 1.0, Direction::Increasing,
                                1e-6);
  CHECK(b.lo <= 0.3);
  CHECK(b.hi >= 0.3);
  CHECK(b.hi - b.lo <= 1e-6);
}

TEST_CASE("bisect_monotone reports missing brackets and non-finite values") {
  try {
    bisect_monotone([](double c) { return c; }, 5.0, 0.0, 1.0, Direction::Increasing, 1e-9);
    FAIL("expected NoBracket");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoBracket);
  }
  try {
    bisect_monotone([](double) { return std::nan(""); }, 0.5, 0.0, 1.0, Direction::Increasing,
                    1e-9);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}

TEST_CASE("sup_on_grid and inf_on_grid return value and node") {
  const auto m = uniform_grid(Interval(-1.0, 1.0), 201);
  const auto [hi, at_hi] = sup_on_grid([](double t) { return 1.0 - t * t; }, m);
  CHECK(hi == doctest::Approx(1.0));
  CHECK(std::abs(at_hi) < 1e-12);
  const auto [lo, at_lo] = inf_on_grid([](double t) { return t; }, m);
  CHECK(lo == -1.0);
  CHECK(at_lo == -1.0);
}

TEST_CASE("derivative consistency accepts exact jets and rejects wrong ones") {
  const SmoothFn good{Interval(0.1, 3.0),
                      [](double t) { return Jet{std::sin(t), std::cos(t), -std::sin(t)}; }};
  CHECK(check_derivative_consistency(good).ok);
  CHECK_NOTHROW(require_derivative_consistency(good, "sin"));
  const SmoothFn bad{Interval(0.1, 3.0),
                     [](double t) { return Jet{std::sin(t), std::cos(t), std::sin(t)}; }};
  CHECK_FALSE(check_derivative_consistency(bad).ok);
  try {
    require_derivative_consistency(bad, "wrong sign");
    FAIL("expected DerivativeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DerivativeMismatch);
  }
}

}
