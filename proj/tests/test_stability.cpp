#include "randrk/error.hpp"
#include "randrk/quadrature.hpp"
#include "randrk/stability.hpp"
#include "randrk/tau_stream.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

using namespace randrk;
using namespace randrk::stability;

namespace {

const double kLn2 = std::numbers::ln2;

// l(z) by adaptive quadrature, split where |1 + z t| or |1 - z t| is
// smallest. The clamp only matters when a node lands on an exact root.
double as_by_quadrature(ComplexPoint z) {
  const Complex c = z.value();
  std::vector<double> cuts;
  if (c != Complex(0, 0)) {
    for (double r : {std::real(-1.0 / c), std::real(1.0 / c)})
      if (r > 0.0 && r < 1.0) cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());
  auto log_abs = [](Complex w) { return std::log(std::max(std::abs(w), 1e-300)); };
  return quad::integrate_adaptive(
      [&](double t) { return log_abs(1.0 + c * t) - log_abs(1.0 - c * t); }, 0.0, 1.0, 1e-12,
      cuts);
}

ComplexPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-6.0, 1.0), im(-4.0, 4.0);
  return {re(rng), im(rng)};
}

}  // namespace

TEST_CASE("amplification factor") {
  CHECK(amplification({0, 0}, 0.3) == Complex(1, 0));
  CHECK(std::abs(amplification({-1, 0}, 0.5) - Complex(1.0 / 3.0, 0)) <= 1e-15);
  CHECK(std::abs(amplification({-2, 0}, 0.5)) <= 1e-15);
  try {
    amplification({2, 0}, 0.5);
    FAIL("pole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtStage);
  }
}

TEST_CASE("mean-square functional values") {
  CHECK(ms_functional_closed({-1, 0}) == doctest::Approx(1.5 - 2 * kLn2).epsilon(1e-15));
  CHECK(ms_functional_closed({-1, 1}) ==
        doctest::Approx(1 - std::log(5.0) + 2 * std::atan(0.5)).epsilon(1e-14));
  CHECK(ms_functional_closed({2, 0}) == std::numeric_limits<double>::infinity());
  CHECK(ms_functional_closed({1, 0}) == std::numeric_limits<double>::infinity());

  CHECK(std::abs(ms_functional_quadrature({-1, 0}, 64) - (1.5 - 2 * kLn2)) <= 1e-10);
  CHECK(ms_functional_quadrature({0, 0}, 64) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(ms_functional_quadrature({-1, 1}, 64) - ms_functional_closed({-1, 1})) <= 1e-10);
  try {
    ms_functional_quadrature({1.5, 0}, 64);
    FAIL("non-integrable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegrable);
  }
}

TEST_CASE("closed form agrees with quadrature") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const ComplexPoint z = random_point(rng);
    if (std::abs(z.im) <= 1e-3) continue;
    CAPTURE(z.re);
    CAPTURE(z.im);
    CHECK(std::abs(ms_functional_closed(z) - ms_functional_quadrature(z, 64)) <= 1e-8);
  }
  for (double a = -6.0; a < 0.95; a += 0.05) {
    CHECK(std::abs(ms_functional_closed({a, 0}) - ms_functional_quadrature({a, 0}, 64)) <= 1e-8);
  }
  // Right of the pole line with b != 0, where the arctan branch matters.
  for (double a : {1.0, 1.5, 3.0}) {
    for (double b : {-2.0, 0.7, 3.0}) {
      const double c = ms_functional_closed({a, b});
      const double q = quad::integrate_adaptive(
          [&](double t) { return std::norm(1.0 + Complex(a, b) / (1.0 - Complex(a, b) * t)); },
          0.0, 1.0, 1e-12);
      CHECK(c == doctest::Approx(q).epsilon(1e-9));
    }
  }
}

TEST_CASE("mean-square region facts") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const ComplexPoint z = random_point(rng);
    CHECK(std::abs(ms_functional_closed(z) - ms_functional_closed({z.re, -z.im})) <= 1e-13);
  }
  const double radius = std::sqrt(std::exp(4.0) - 1.0);
  std::uniform_real_distribution<double> r(radius, 4 * radius), phi(std::numbers::pi / 2,
                                                                      3 * std::numbers::pi / 2);
  for (int k = 0; k < 500; ++k) {
    const double rr = r(rng), ph = phi(rng);
    CHECK(ms_functional_closed({rr * std::cos(ph), rr * std::sin(ph)}) >= 1.0);
  }
  for (double a = 0.0; a <= 1.0; a += 0.1)
    for (double b = -4.0; b <= 4.0; b += 0.25) CHECK(ms_functional_closed({a, b}) >= 1.0);
  for (double a : {-0.5, -1.0, -2.0, -4.0})
    CHECK(std::abs(ms_functional_closed({a, 1e-8}) - (1 + ms_interval_g(a))) <= 1e-5);
}

TEST_CASE("interval function and endpoint") {
  CHECK(ms_interval_g(-4.03) == doctest::Approx(-0.002).epsilon(0.1));
  CHECK(ms_interval_g(-4.04) == doctest::Approx(0.0036).epsilon(0.05));
  CHECK(ms_interval_g(0.0) == 0.0);
  CHECK_THROWS_AS(ms_interval_g(1.0), Error);

  const double x0 = find_ms_interval_endpoint();
  CHECK(x0 > 4.03);
  CHECK(x0 < 4.04);
  CHECK(std::abs(ms_interval_g(-x0)) <= 1e-11);
  CHECK(std::abs(find_ms_interval_endpoint(0.5e-12) - x0) <= 1e-10);
}

TEST_CASE("asymptotic functional") {
  CHECK(as_functional({-1, 0}) == doctest::Approx(-2 * kLn2).epsilon(1e-14));
  CHECK(as_functional({0, 0}) == 0.0);
  CHECK(as_functional({1, 0}) == doctest::Approx(2 * kLn2).epsilon(1e-14));
  CHECK(std::abs(as_functional({-1, 0}) - as_by_quadrature({-1, 0})) <= 1e-9);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    ComplexPoint z = random_point(rng);
    if (k % 10 == 0) z.im = 0.0;
    CAPTURE(z.re);
    CAPTURE(z.im);
    CHECK(std::abs(as_functional(z) - as_by_quadrature(z)) <= 1e-8);
    CHECK(std::abs(as_functional({-z.re, -z.im}) + as_functional(z)) <= 1e-10);
  }
  for (ComplexPoint z : {ComplexPoint{1e-3, 2e-3}, ComplexPoint{-0.1, 0.2}, ComplexPoint{-2, 0}})
    CHECK(std::abs(as_functional(z) - as_by_quadrature(z)) <= 1e-9);
}

TEST_CASE("asymptotic sign law") {
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const ComplexPoint z{-5.0 + 10.0 * i / 99.0, -5.0 + 10.0 * j / 99.0};
      if (std::abs(z.re) < 1e-9) continue;
      CHECK((as_functional(z) < 0) == (z.re < 0));
    }
  }
}

TEST_CASE("point classification") {
  const StabilityVerdict m1 = classify_point({-1, 0});
  CHECK(m1.in_ms);
  CHECK(m1.in_as_sp);
  CHECK(m1.ms_value == doctest::Approx(1.5 - 2 * kLn2));

  const StabilityVerdict m5 = classify_point({-5, 0});
  CHECK_FALSE(m5.in_ms);
  CHECK(m5.in_as_sp);
  CHECK(m5.in_det_ref);

  const StabilityVerdict p = classify_point({1, 1});
  CHECK_FALSE(p.in_ms);
  CHECK_FALSE(p.in_as_sp);
  CHECK_FALSE(p.in_det_ref);

  const double x0 = find_ms_interval_endpoint();
  const StabilityVerdict edge = classify_point({-x0, 0});
  CHECK(edge.on_ms_boundary);
  CHECK_FALSE(edge.in_ms);
}

TEST_CASE("Monte Carlo consistency at z = -1") {
  auto s = tau_stream(31, 0);
  constexpr int n = 1000000;
  double sum = 0, sum2 = 0;
  for (int k = 0; k < n; ++k) {
    const double v = std::norm(amplification({-1, 0}, s.next()));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - ms_functional_closed({-1, 0})) <= 3 * se);

  auto path = tau_stream(32, 0);
  constexpr int steps = 100000;
  double log_v = 0;
  for (int k = 0; k < steps; ++k) log_v += std::log(std::abs(amplification({-1, 0}, path.next())));
  CHECK(std::abs(log_v / steps - as_functional({-1, 0})) <= 0.01);
}

TEST_CASE("region scan lattice") {
  const RegionGrid g = scan_region(Rect{}, 141, 161, Functional::MeanSquare);
  CHECK(g.values.rows() == 141);
  CHECK(g.values.cols() == 161);
  CHECK(g.re(0) == -6.0);
  CHECK(g.re(140) == 1.0);
  CHECK(g.im(80) == 0.0);
  CHECK(g.level == 1.0);
  CHECK(g.values(100, 80) == ms_functional_closed({g.re(100), g.im(80)}));
  const RegionGrid a = scan_region(Rect{}, 8, 9, Functional::Asymptotic);
  CHECK(a.level == 0.0);
  CHECK(a.values(3, 4) == as_functional({a.re(3), a.im(4)}));
}
