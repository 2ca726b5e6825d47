#include "randrk/contour.hpp"
#include "randrk/error.hpp"
#include "randrk/stability.hpp"

#include <doctest.h>

#include <cmath>

using namespace randrk;
using namespace randrk::stability;

namespace {

RegionGrid synthetic(int n, double (*f)(double, double)) {
  RegionGrid g;
  g.rect = {-2, 2, -2, 2};
  g.nx = n;
  g.ny = n;
  g.values.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.values(i, j) = f(g.re(i), g.im(j));
  return g;
}

}  // namespace

TEST_CASE("constant field has no contour") {
  const RegionGrid g = synthetic(10, [](double, double) { return 3.0; });
  try {
    contour_extract(g, 1.0);
    FAIL("expected EmptyContour");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyContour);
  }
}

TEST_CASE("circle becomes one closed polyline") {
  const RegionGrid g = synthetic(81, [](double x, double y) { return x * x + y * y; });
  const auto lines = contour_extract(g, 1.0);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].closed);
  CHECK(lines[0].vertices.front().re == lines[0].vertices.back().re);
  CHECK(lines[0].vertices.front().im == lines[0].vertices.back().im);
  for (const ComplexPoint& v : lines[0].vertices)
    CHECK(std::abs(std::hypot(v.re, v.im) - 1.0) <= g.cell_width());
}

TEST_CASE("boundary-terminated line stays open") {
  const RegionGrid g = synthetic(21, [](double x, double) { return x; });
  const auto lines = contour_extract(g, 0.3);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].closed);
  CHECK(lines[0].vertices.size() == 21);
  for (const ComplexPoint& v : lines[0].vertices) CHECK(v.re == doctest::Approx(0.3));
}

TEST_CASE("mean-square contour matches the interval endpoint") {
  const RegionGrid g = scan_region(Rect{}, 141, 161, Functional::MeanSquare);
  const auto lines = contour_extract(g, 1.0);
  const double x0 = find_ms_interval_endpoint();

  double nearest_left = 1e9;
  for (const auto& line : lines)
    for (const ComplexPoint& v : line.vertices)
      if (std::abs(v.im) <= 1e-12 && v.re < -1.0)
        nearest_left = std::min(nearest_left, std::abs(v.re + x0));
  CHECK(nearest_left <= g.cell_width());

  // Reflection symmetry of the vertex set.
  for (const auto& line : lines) {
    for (const ComplexPoint& v : line.vertices) {
      double best = 1e9;
      for (const auto& other : lines)
        for (const ComplexPoint& w : other.vertices)
          best = std::min(best, std::hypot(v.re - w.re, v.im + w.im));
      CHECK(best <= g.cell_width());
    }
  }
}

TEST_CASE("asymptotic contour hugs the imaginary axis") {
  const RegionGrid g = scan_region(Rect{}, 141, 161, Functional::Asymptotic);
  const auto lines = contour_extract(g, 0.0);
  REQUIRE_FALSE(lines.empty());
  for (const auto& line : lines)
    for (const ComplexPoint& v : line.vertices) CHECK(std::abs(v.re) <= g.cell_width());
}
