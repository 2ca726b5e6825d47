#include "randrk/problems.hpp"

#include "randrk/error.hpp"
#include "randrk/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace randrk::problems {

namespace {

State scalar(double v) { return State::Constant(1, v); }

Matrix scalar_matrix(double v) { return Matrix::Constant(1, 1, v); }

}  // namespace

Ivp dahlquist(double lambda, double t0, double t1) {
  Ivp ivp("dahlquist", t0, t1, scalar(1.0),
          [lambda](double, const State& x) -> State { return lambda * x; });
  ivp.with_affine({[lambda](double) { return scalar_matrix(lambda); },
                   [](double) { return scalar(0.0); }})
      .with_exact([lambda, t0](double t) { return scalar(std::exp(lambda * (t - t0))); });
  if (lambda != 0.0) {
    const double l = std::abs(lambda);
    ivp.with_regularity({l, l, 1.0});
  }
  return ivp;
}

Ivp dahlquist_complex(std::complex<double> lambda, double t0, double t1) {
  Matrix a(2, 2);
  a << lambda.real(), -lambda.imag(), lambda.imag(), lambda.real();
  State eta(2);
  eta << 1.0, 0.0;
  Ivp ivp("dahlquist-complex", t0, t1, eta, [a](double, const State& x) -> State { return a * x; });
  ivp.with_affine({[a](double) { return a; }, [](double) { return State::Zero(2); }})
      .with_exact([lambda, t0](double t) {
        const std::complex<double> w = std::exp(lambda * (t - t0));
        State s(2);
        s << w.real(), w.imag();
        return s;
      });
  if (std::abs(lambda) > 0.0) {
    const double l = std::abs(lambda);
    ivp.with_regularity({l, l, 1.0});
  }
  return ivp;
}

Ivp stiff(double t0, double t1) {
  require(t0 == 0.0, "stiff: the closed-form solution assumes z(0) = 1 at t0 = 0");
  Ivp ivp("stiff", t0, t1, scalar(1.0), [](double t, const State& x) -> State {
    return -50.0 * (x.array() - std::cos(t)).matrix();
  });
  ivp.with_affine({[](double) { return scalar_matrix(-50.0); },
                   [](double t) { return scalar(50.0 * std::cos(t)); }})
      .with_exact([](double t) {
        return scalar((std::exp(-50.0 * t) + 2500.0 * std::cos(t) + 50.0 * std::sin(t)) / 2501.0);
      })
      .with_regularity({50.0, 50.0, 1.0});
  return ivp;
}

Ivp holder_point(double lambda, double rho, double c, double t0, double t1) {
  require(rho > 0.0 && rho <= 1.0, "holder_point: rho must lie in (0, 1]");
  auto forcing = [rho, c](double t) { return std::pow(std::abs(t - c), rho); };
  Ivp ivp("holder-point", t0, t1, scalar(1.0), [lambda, forcing](double t, const State& x) -> State {
    return (lambda * x.array() + forcing(t)).matrix();
  });
  // z(t) = e^{lambda (t - t0)} + int_{t0}^t e^{lambda (t - s)} |s - c|^rho ds
  auto exact = [lambda, forcing, c, t0](double t) {
    double integral = 0.0;
    if (t > t0) {
      const double breaks[] = {c};
      integral = quad::integrate_adaptive(
          [&](double s) { return std::exp(lambda * (t - s)) * forcing(s); }, t0, t, 1e-13,
          breaks);
    }
    return scalar(std::exp(lambda * (t - t0)) + integral);
  };
  const double reach = std::max(std::abs(t0 - c), std::abs(t1 - c));
  ivp.with_affine({[lambda](double) { return scalar_matrix(lambda); },
                   [forcing](double t) { return scalar(forcing(t)); }})
      .with_exact(exact);
  if (lambda != 0.0) {
    const double l = std::abs(lambda);
    ivp.with_regularity({std::max(l, std::pow(reach, rho)), l, rho});
  }
  return ivp;
}

Ivp holder_lacunary(double lambda, double rho, int terms, double t0, double t1) {
  require(rho > 0.0 && rho <= 1.0, "holder_lacunary: rho must lie in (0, 1]");
  require(terms >= 1 && terms <= 40, "holder_lacunary: terms must lie in [1, 40]");
  std::vector<double> amp(terms), freq(terms);
  double amp_sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    amp[k] = std::pow(2.0, -k * rho);
    freq[k] = std::numbers::pi * std::ldexp(1.0, k);
    amp_sum += amp[k];
  }
  auto forcing = [amp, freq](double t) {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) s += amp[k] * std::cos(freq[k] * t);
    return s;
  };
  // Particular solution of z' = lambda z + a cos(w t):
  //   a (-lambda cos(w t) + w sin(w t)) / (lambda^2 + w^2)
  auto particular = [amp, freq, lambda](double t) {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      const double w = freq[k];
      s += amp[k] * (-lambda * std::cos(w * t) + w * std::sin(w * t)) / (lambda * lambda + w * w);
    }
    return s;
  };
  const double p0 = particular(t0);
  Ivp ivp("holder", t0, t1, scalar(1.0), [lambda, forcing](double t, const State& x) -> State {
    return (lambda * x.array() + forcing(t)).matrix();
  });
  ivp.with_affine({[lambda](double) { return scalar_matrix(lambda); },
                   [forcing](double t) { return scalar(forcing(t)); }})
      .with_exact([lambda, particular, p0, t0](double t) {
        return scalar(std::exp(lambda * (t - t0)) * (1.0 - p0) + particular(t));
      });
  if (lambda != 0.0) {
    const double l = std::abs(lambda);
    ivp.with_regularity({std::max(l, amp_sum), l, rho});
  }
  return ivp;
}

Ivp zero_field(std::size_t dim, double t0, double t1) {
  require(dim >= 1, "zero_field: dim must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  Ivp ivp("zero", t0, t1, State::Ones(d), [d](double, const State&) -> State {
    return State::Zero(d);
  });
  ivp.with_affine({[d](double) { return Matrix::Zero(d, d); },
                   [d](double) { return State::Zero(d); }})
      .with_exact([d](double) { return State::Ones(d); });
  return ivp;
}

}  // namespace randrk::problems
