#pragma once

#include <functional>
#include <span>
#include <vector>

namespace randrk::quad {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

double integrate(const std::function<double(double)>& f, double a, double b,
                 const GaussLegendreRule& rule);

// Adaptive tanh-sinh quadrature on [a, b], split at every breakpoint strictly
// inside (a, b). Integrable endpoint singularities are fine because the
// abscissae never reach the interval ends.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, std::span<const double> breakpoints = {});

}  // namespace randrk::quad
