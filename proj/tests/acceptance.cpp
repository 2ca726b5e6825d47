// Acceptance suite: one PASS/FAIL line per criterion, with wall time.
#include "randrk/cli.hpp"
#include "randrk/error.hpp"
#include "randrk/experiments.hpp"
#include "randrk/problems.hpp"
#include "randrk/schemes.hpp"
#include "randrk/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace randrk;
using namespace randrk::stability;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("[%s] %d %s: %s; %.2f s (budget %.0f s)%s\n", ok ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), secs, budget_s, in_time ? "" : " OVER BUDGET");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

StageSolverConfig affine() {
  StageSolverConfig cfg;
  cfg.method = StageMethod::Affine;
  return cfg;
}

std::vector<double> dyadic_levels() {
  std::vector<double> hs;
  for (int k = 4; k <= 9; ++k) hs.push_back(std::ldexp(1.0, -k));
  return hs;
}

constexpr std::uint64_t kSeeds[] = {1, 2, 3};

}  // namespace

int main() {
  criterion(1, "mean-square interval endpoint", 1.0, [] {
    std::ostringstream out, err;
    const int code = cli::run({"stability", "--mode", "interval"}, out, err);
    const double x0 = find_ms_interval_endpoint();
    const double g = ms_interval_g(-x0);
    const bool printed = out.str().find("x0 = 4.03") != std::string::npos;
    return Outcome{code == 0 && printed && x0 > 4.03 && x0 < 4.04 && std::abs(g) <= 1e-11,
                   fmt("x0 = %.12f", x0) + fmt(", |g(-x0)| = %.2e", std::abs(g))};
  });

  criterion(2, "closed form vs 64-node quadrature", 1.0, [] {
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> re(-6.0, 1.0), im(-4.0, 4.0);
    double worst = 0;
    int n = 0;
    while (n < 500) {
      const ComplexPoint z{re(rng), im(rng)};
      if (z.im == 0.0 && z.re >= 1.0) continue;
      worst = std::max(worst, std::abs(ms_functional_closed(z) - ms_functional_quadrature(z, 64)));
      ++n;
    }
    return Outcome{worst <= 1e-8, fmt("max deviation %.2e over 500 points", worst)};
  });

  criterion(3, "region facts on a 141x161 lattice", 5.0, [] {
    const RegionGrid ms = scan_region(Rect{}, 141, 161, Functional::MeanSquare);
    const RegionGrid as = scan_region(Rect{}, 141, 161, Functional::Asymptotic);
    const double radius = std::sqrt(std::exp(4.0) - 1.0);
    int bad_a = 0, bad_b = 0, bad_d = 0, far = 0;
    double conj = 0;
    for (int i = 0; i < ms.nx; ++i) {
      for (int j = 0; j < ms.ny; ++j) {
        const double a = ms.re(i), b = ms.im(j), v = ms.values(i, j);
        if (a >= 0 && !(v >= 1)) ++bad_a;
        if (std::hypot(a, b) >= radius) {
          ++far;
          if (!(v >= 1)) ++bad_b;
        }
        const double mirrored = ms_functional_closed({a, -b});
        if (std::isfinite(v) || std::isfinite(mirrored))
          conj = std::max(conj, std::abs(v - mirrored));
        if (std::abs(a) >= 1e-9 && (as.values(i, j) < 0) != (a < 0)) ++bad_d;
      }
    }
    // The default window never reaches |z| >= radius, so (b) is also checked on
    // a wider lattice with the same spacing.
    const RegionGrid wide = scan_region(Rect{-12.0, 1.0, -8.0, 8.0}, 261, 321, Functional::MeanSquare);
    int wide_far = 0, wide_bad = 0;
    for (int i = 0; i < wide.nx; ++i)
      for (int j = 0; j < wide.ny; ++j)
        if (std::hypot(wide.re(i), wide.im(j)) >= radius) {
          ++wide_far;
          if (!(wide.values(i, j) >= 1)) ++wide_bad;
        }
    bad_b += wide_bad;
    far += wide_far;
    std::ostringstream d;
    d << "(a) " << bad_a << " violations, (b) " << bad_b << " of " << far
      << " far points violate (default window has none; wider window [-12,1]x[-8,8]), (c) max asymmetry " << fmt("%.1e", conj) << ", (d) " << bad_d
      << " sign mismatches";
    return Outcome{bad_a == 0 && bad_b == 0 && conj <= 1e-13 && bad_d == 0, d.str()};
  });

  criterion(4, "multiplier law for S1 and S2", 1.0, [] {
    auto taus = tau_stream(4, 0);
    double worst = 0;
    int used = 0;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const std::complex<double> z(-5.0 + 10.0 * i / 19.0, -5.0 + 10.0 * j / 19.0);
        const double tau = taus.next();
        if (std::abs(1.0 - z * tau) <= 1e-6) continue;
        ++used;
        const Ivp d = problems::dahlquist_complex(z);
        State v(2);
        v << 1.0, 0.0;
        const std::complex<double> expected = 1.0 + z / (1.0 - z * tau);
        for (const StepResult& r : {step_s1(d, 0.0, v, 1.0, tau, affine()),
                                    step_s2(d, 0.0, v, 1.0, tau, affine())}) {
          const double rel = std::abs(std::complex<double>(r.state[0], r.state[1]) - expected) /
                             std::max(std::abs(expected), std::numeric_limits<double>::min());
          worst = std::max(worst, rel);
        }
      }
    }
    return Outcome{worst <= 1e-10 && used >= 390,
                   std::to_string(used) + " points, max relative deviation " +
                       fmt("%.2e", worst)};
  });

  criterion(5, "convergence rates (M = 2000, p = 2, h = 2^-4..2^-9)", 60.0, [] {
    const auto hs = dyadic_levels();
    std::ostringstream d;
    bool ok = true;
    auto record = [&](const char* label, double slope, double lo, double hi) {
      const bool in = slope >= lo && slope <= hi;
      ok = ok && in;
      d << label << fmt(" %.3f", slope) << (in ? "" : "!") << ' ';
    };
    const Ivp holder = problems::holder_lacunary(-2.0, 0.5);
    const Ivp dahl = problems::dahlquist(-2.0);
    for (std::uint64_t seed : kSeeds) {
      record("holder/s1", experiments::convergence_order(holder, SchemeId::S1, hs, 2000, 2.0,
                                                         seed, affine()).slope,
             0.85, 1.15);
      record("holder/s2", experiments::convergence_order(holder, SchemeId::S2, hs, 2000, 2.0,
                                                         seed, affine()).slope,
             0.85, 1.15);
      record("dahlquist/s2", experiments::convergence_order(dahl, SchemeId::S2, hs, 2000, 2.0,
                                                            seed, affine()).slope,
             1.35, 1.75);
    }
    record("det-s2", experiments::convergence_order(dahl, SchemeId::DetS2, hs, 1, 2.0, 1,
                                                    affine()).slope,
           1.9, 2.1);
    return Outcome{ok, d.str() + "(windows [0.85,1.15], [1.35,1.75], [1.9,2.1])"};
  });

  criterion(6, "stiff problem on [0,50]", 5.0, [] {
    std::ostringstream d;
    double det_worst = 0;
    for (SchemeId id : {SchemeId::DetS1, SchemeId::DetS2})
      det_worst = std::max(det_worst, experiments::stiff_demo(id, 0.125, 1, 1, affine())[0].max_error);
    const bool a = det_worst <= 0.01;

    double rand_worst = 0;
    int above = 0, non_finite = 0, total = 0;
    for (SchemeId id : {SchemeId::S1, SchemeId::S2}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (const auto& p : experiments::stiff_demo(id, 0.5, 1, seed, affine())) {
          ++total;
          if (!p.finite) ++non_finite;
          if (!(p.max_error <= 10.0)) ++above;
          rand_worst = std::max(rand_worst, p.max_error);
        }
      }
    }
    const bool b = non_finite == 0 && above == 0;

    double expl_least = std::numeric_limits<double>::infinity();
    expl_least = std::min(expl_least,
                          experiments::stiff_demo(SchemeId::DetRK2, 0.5, 1, 1, affine())[0].max_error);
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      expl_least = std::min(
          expl_least,
          experiments::stiff_demo(SchemeId::RandExplRK2, 0.5, 1, seed, affine())[0].max_error);
    const bool c = expl_least >= 1e100;

    d << "(a) det S1/S2 h=1/8 max error " << fmt("%.3e", det_worst) << (a ? " ok" : " FAIL")
      << "; (b) S1/S2 h=1/2: " << total - non_finite << "/" << total << " finite, " << above
      << " paths above 10, worst " << fmt("%.3e", rand_worst) << (b ? " ok" : " FAIL")
      << "; (c) explicit h=1/2 least max error " << fmt("%.3e", expl_least)
      << (c ? " ok" : " FAIL");
    return Outcome{a && b && c, d.str()};
  });

  criterion(7, "tau = 1/2 reproduces det S1/S2 bitwise", 1.0, [] {
    int mismatches = 0, compared = 0;
    const std::pair<Ivp, std::size_t> cases[] = {{problems::stiff(), 100},
                                                 {problems::stiff(), 400},
                                                 {problems::dahlquist(-2.0), 64}};
    for (const auto& [ivp, n] : cases) {
      const TimeGrid g = make_grid(ivp.t0(), ivp.t1(), n);
      for (auto [rand, det] : {std::pair{SchemeId::S1, SchemeId::DetS1},
                               std::pair{SchemeId::S2, SchemeId::DetS2}}) {
        const Trajectory r = integrate(ivp, rand, g, FixedTau{0.5}, affine());
        const Trajectory d = integrate(ivp, det, g, std::monostate{}, affine());
        ++compared;
        if (r.states != d.states) ++mismatches;
      }
    }
    return Outcome{mismatches == 0, std::to_string(compared) + " trajectory pairs, " +
                                        std::to_string(mismatches) + " differ"};
  });

  criterion(8, "Monte Carlo consistency at z = -1", 2.0, [] {
    auto s = tau_stream(8, 0);
    constexpr int n = 1000000;
    double sum = 0, sum2 = 0;
    for (int k = 0; k < n; ++k) {
      const double v = std::norm(amplification({-1, 0}, s.next()));
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    const double target = ms_functional_closed({-1, 0});
    const double z_score = std::abs(mean - target) / se;

    auto path = tau_stream(8, 1);
    constexpr int steps = 100000;
    double log_v = 0;
    for (int k = 0; k < steps; ++k)
      log_v += std::log(std::abs(amplification({-1, 0}, path.next())));
    const double rate = log_v / steps;
    const double expected = as_functional({-1, 0});
    return Outcome{z_score <= 3 && std::abs(rate - expected) <= 0.01,
                   fmt("mean %.5f", mean) + fmt(" vs %.5f", target) + fmt(" (%.2f SE)", z_score) +
                       fmt(", decay rate %.4f", rate) + fmt(" vs %.4f", expected)};
  });

  // Informational: the rough-at-one-point forcing |t - c|^rho.
  {
    const auto start = std::chrono::steady_clock::now();
    const double slope =
        experiments::convergence_order(problems::holder_point(-2.0, 0.5, 0.5), SchemeId::S2,
                                       dyadic_levels(), 2000, 2.0, 1, affine())
            .slope;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[INFO] point-Hölder forcing |t-1/2|^(1/2), S2 slope %.3f (not a criterion); %.2f s\n",
                slope, secs);
  }

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
