#include "randrk/stability.hpp"

#include "randrk/error.hpp"
#include "randrk/parallel.hpp"
#include "randrk/quadrature.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace randrk::stability {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const quad::GaussLegendreRule& cached_rule(int nodes) {
  thread_local std::optional<quad::GaussLegendreRule> rule;
  if (!rule || static_cast<int>(rule->nodes.size()) != nodes) rule = quad::gauss_legendre(nodes);
  return *rule;
}

}  // namespace

Complex amplification(ComplexPoint z, double tau) {
  const Complex zc = z.value();
  const Complex denom = 1.0 - zc * tau;
  if (denom == 0.0) {
    std::ostringstream os;
    os << "1 - z tau = 0 at z = " << z.re << (z.im < 0 ? " - " : " + ") << std::abs(z.im)
       << "i, tau = " << tau;
    fail(ErrorKind::PoleAtStage, os.str());
  }
  return 1.0 + zc / denom;
}

double ms_interval_g(double a) {
  if (!(a < 1.0)) fail(ErrorKind::DomainError, "ms_interval_g: need a < 1");
  return a * a / (1.0 - a) - 2.0 * std::log1p(-a);
}

double ms_functional_closed(ComplexPoint z) {
  const double a = z.re;
  const double b = z.im;
  if (b == 0.0) {
    if (a >= 1.0) return kInf;
    return 1.0 + ms_interval_g(a);
  }
  const double ab = std::abs(b);
  const double modsq = a * a + b * b;
  const double one_minus_a = 1.0 - a;
  const double log_term = std::log(one_minus_a * one_minus_a + b * b);
  // For a < 1 the principal arctan is the right branch. Past a = 1 the same
  // difference of arctangents is the angle atan2(|b|, 1 - a) in (pi/2, pi).
  const double angle = (a < 1.0) ? std::atan(ab / one_minus_a) : std::atan2(ab, one_minus_a);
  return 1.0 - log_term + modsq / ab * angle;
}

double ms_functional_quadrature(ComplexPoint z, int nodes) {
  if (z.im == 0.0 && z.re >= 1.0)
    fail(ErrorKind::NonIntegrable, "mean-square integrand has a non-integrable pole for real z >= 1");
  require(nodes >= 1, "ms_functional_quadrature: need at least one node");
  const Complex zc = z.value();
  return quad::integrate(
      [zc](double t) { return std::norm(1.0 + zc / (1.0 - t * zc)); }, 0.0, 1.0,
      cached_rule(nodes));
}

double log_modulus_integral(ComplexPoint z) {
  const Complex zc = z.value();
  const double r = std::abs(zc);
  if (r == 0.0) return 0.0;
  if (r < 0.25) {
    // (1+z) Log(1+z) / z - 1 = sum_{k>=2} (-1)^k z^{k-1} / (k (k-1))
    Complex term = zc;  // z^{k-1}
    Complex sum = 0.0;
    for (int k = 2; k < 80; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      sum += sign * term / (static_cast<double>(k) * (k - 1));
      term *= zc;
      if (std::abs(term) < 1e-18) break;
    }
    return sum.real();
  }
  const Complex w = 1.0 + zc;
  if (w == 0.0) return -1.0;  // int_0^1 log(1 - t) dt
  // Antiderivative ((1 + z t) Log(1 + z t) - (1 + z t)) / z. The path 1 + z t
  // only meets the branch cut when z is real and < -1; there the imaginary
  // part of Log is constant and drops out of the real part.
  return (w * std::log(w) / zc).real() - 1.0;
}

double as_functional(ComplexPoint z) {
  return log_modulus_integral(z) - log_modulus_integral({-z.re, -z.im});
}

double find_ms_interval_endpoint(double abs_tol) {
  require(abs_tol > 0.0, "find_ms_interval_endpoint: tolerance must be positive");
  double lo = 4.03;
  double hi = 4.04;
  auto phi = [](double x) { return ms_interval_g(-x); };
  if (!(phi(lo) < 0.0 && phi(hi) > 0.0))
    fail(ErrorKind::DomainError, "g(-x) does not change sign on [4.03, 4.04]");
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phi(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

StabilityVerdict classify_point(ComplexPoint z) {
  StabilityVerdict v;
  v.z = z;
  v.ms_value = ms_functional_closed(z);
  v.as_value = as_functional(z);
  v.on_ms_boundary = std::abs(v.ms_value - 1.0) <= kBoundaryBand;
  v.in_ms = v.ms_value < 1.0 && !v.on_ms_boundary;
  v.in_as_sp = z.re < 0.0;
  v.in_det_ref = z.re < 0.0;
  return v;
}

std::string_view to_string(Functional f) {
  return f == Functional::MeanSquare ? "ms" : "as";
}

double default_level(Functional f) { return f == Functional::MeanSquare ? 1.0 : 0.0; }

double RegionGrid::re(int i) const {
  return rect.re_min + (rect.re_max - rect.re_min) * static_cast<double>(i) / (nx - 1);
}

double RegionGrid::im(int j) const {
  return rect.im_min + (rect.im_max - rect.im_min) * static_cast<double>(j) / (ny - 1);
}

double RegionGrid::cell_width() const { return (rect.re_max - rect.re_min) / (nx - 1); }

double RegionGrid::cell_height() const { return (rect.im_max - rect.im_min) / (ny - 1); }

RegionGrid scan_region(const Rect& rect, int nx, int ny, Functional functional) {
  require(nx >= 2 && ny >= 2, "scan_region: need nx, ny >= 2");
  require(rect.re_min < rect.re_max && rect.im_min < rect.im_max,
          "scan_region: degenerate rectangle");
  RegionGrid grid;
  grid.rect = rect;
  grid.nx = nx;
  grid.ny = ny;
  grid.functional = functional;
  grid.level = default_level(functional);
  grid.values.resize(nx, ny);
  parallel_for(static_cast<std::size_t>(nx), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 0; j < ny; ++j) {
      const ComplexPoint z{grid.re(i), grid.im(j)};
      grid.values(i, j) = functional == Functional::MeanSquare ? ms_functional_closed(z)
                                                                : as_functional(z);
    }
  });
  return grid;
}

}  // namespace randrk::stability
