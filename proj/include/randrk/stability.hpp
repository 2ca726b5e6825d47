#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string_view>

namespace randrk::stability {

using Complex = std::complex<double>;

// z = lambda h = re + i im.
struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;

  Complex value() const { return {re, im}; }
};

// Per-step multiplier of S1 and S2 on z' = lambda z: 1 + z / (1 - z tau).
// Throws PoleAtStage when 1 - z tau == 0.
Complex amplification(ComplexPoint z, double tau);

// E|1 + z/(1 - z tau)|^2, tau ~ U[0,1], in closed form. +inf on the ray
// im = 0, re >= 1 where the integrand has a non-integrable pole.
double ms_functional_closed(ComplexPoint z);

// Same expectation by an n-node Gauss-Legendre rule on [0, 1].
// Throws NonIntegrable on the ray im = 0, re >= 1.
double ms_functional_quadrature(ComplexPoint z, int nodes);

// E log|1 + z/(1 - z tau)| = J(z) - J(-z), J(z) = int_0^1 log|1 + z t| dt.
double as_functional(ComplexPoint z);

// J(z) above, exposed for tests.
double log_modulus_integral(ComplexPoint z);

// g(a) = a^2/(1 - a) - 2 log(1 - a); the real-axis mean-square value is 1 + g(a).
// Throws DomainError for a >= 1.
double ms_interval_g(double a);

// Root x0 of x -> g(-x) bracketed in (4.03, 4.04); the mean-square interval
// is (-x0, 0).
double find_ms_interval_endpoint(double abs_tol = 1e-12);

inline constexpr double kBoundaryBand = 1e-12;

struct StabilityVerdict {
  ComplexPoint z;
  double ms_value = 0.0;
  double as_value = 0.0;
  bool in_ms = false;        // ms_value < 1 and not on the boundary band
  bool on_ms_boundary = false;  // |ms_value - 1| <= kBoundaryBand
  bool in_as_sp = false;     // Re z < 0
  bool in_det_ref = false;   // |z + 2| < |z - 2|, i.e. Re z < 0
};

StabilityVerdict classify_point(ComplexPoint z);

enum class Functional { MeanSquare, Asymptotic };

std::string_view to_string(Functional f);

struct Rect {
  double re_min = -6.0;
  double re_max = 1.0;
  double im_min = -4.0;
  double im_max = 4.0;

  bool operator==(const Rect&) const = default;
};

// Values on the nx x ny lattice re_i = re_min + i (re_max - re_min)/(nx - 1),
// im_j likewise; values(i, j) belongs to (re_i, im_j).
struct RegionGrid {
  Rect rect;
  int nx = 0;
  int ny = 0;
  Functional functional = Functional::MeanSquare;
  double level = 1.0;
  Eigen::MatrixXd values;

  double re(int i) const;
  double im(int j) const;
  double cell_width() const;   // lattice spacing along re
  double cell_height() const;  // lattice spacing along im
};

// Contour level conventionally used for a functional: 1 for MS, 0 for AS.
double default_level(Functional f);

RegionGrid scan_region(const Rect& rect, int nx, int ny, Functional functional);

}  // namespace randrk::stability
