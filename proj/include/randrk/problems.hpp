#pragma once

#include "randrk/ivp.hpp"

#include <complex>

namespace randrk::problems {

// z' = lambda z, z(0) = 1 on [t0, t1], scalar real lambda.
Ivp dahlquist(double lambda, double t0 = 0.0, double t1 = 1.0);

// Complex lambda as the 2-d real system (re, im)' = [[lr, -li], [li, lr]] (re, im).
Ivp dahlquist_complex(std::complex<double> lambda, double t0 = 0.0, double t1 = 1.0);

// z' = -50 (z - cos t), z(0) = 1; exact solution
// (e^{-50t} + 2500 cos t + 50 sin t) / 2501.
Ivp stiff(double t0 = 0.0, double t1 = 50.0);

// z' = lambda z + |t - c|^rho, z(0) = 1. Rough only at t = c; the exact
// solution comes from variation of constants with adaptive quadrature.
Ivp holder_point(double lambda = -2.0, double rho = 0.5, double c = 0.5,
                 double t0 = 0.0, double t1 = 1.0);

// z' = lambda z + sum_{k<terms} 2^{-k rho} cos(pi 2^k t), z(0) = 1.
// The lacunary forcing is rho-Hölder uniformly in time (Weierstrass type),
// and the exact solution is a closed-form sum.
Ivp holder_lacunary(double lambda = -2.0, double rho = 0.5, int terms = 14,
                    double t0 = 0.0, double t1 = 1.0);

// f = 0 in dimension d with eta = ones.
Ivp zero_field(std::size_t dim = 1, double t0 = 0.0, double t1 = 1.0);

}  // namespace randrk::problems
