#include "randrk/experiments.hpp"

#include "randrk/error.hpp"
#include "randrk/parallel.hpp"
#include "randrk/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace randrk::experiments {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kReferenceRefinement = 64;

}  // namespace

ReferenceSolution::ReferenceSolution(const Ivp& ivp, std::size_t finest_n,
                                     const StageSolverConfig& cfg)
    : ivp_(&ivp), exact_(ivp.has_exact()) {
  if (exact_) return;
  require(finest_n >= 1, "ReferenceSolution: finest_n must be positive");
  grid_ = make_grid(ivp.t0(), ivp.t1(), kReferenceRefinement * finest_n);
  states_ = integrate(ivp, SchemeId::DetS2, *grid_, std::monostate{}, cfg).states;
}

State ReferenceSolution::at(double t) const {
  const double span = ivp_->t1() - ivp_->t0();
  require(t >= ivp_->t0() - 1e-12 * span && t <= ivp_->t1() + 1e-12 * span,
          "reference_solution: t outside [t0, t1]");
  if (exact_) return ivp_->exact(t);
  const double pos = (t - grid_->a()) / grid_->h();
  const auto j = static_cast<std::size_t>(std::llround(pos));
  if (j > grid_->n() || std::abs(grid_->t(j) - t) > 1e-9 * grid_->h()) {
    std::ostringstream os;
    os << "t = " << t << " is not a node of the reference grid (h_ref = " << grid_->h() << ")";
    fail(ErrorKind::NotOnReferenceGrid, os.str());
  }
  return states_[j];
}

State reference_solution(const Ivp& ivp, double t) {
  // Without an exact solution the fallback grid is sized for n <= 1024.
  return ReferenceSolution(ivp, ivp.has_exact() ? 1 : 1024).at(t);
}

std::vector<double> path_max_errors(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid,
                                    std::size_t paths, std::uint64_t seed,
                                    const StageSolverConfig& cfg,
                                    const ReferenceSolution& reference) {
  std::vector<State> ref;
  ref.reserve(grid.n() + 1);
  for (std::size_t j = 0; j <= grid.n(); ++j) ref.push_back(reference.at(grid.t(j)));

  const bool randomized = is_randomized(scheme);
  std::vector<double> errors(paths, 0.0);
  parallel_for(paths, [&](std::size_t i) {
    TauSource taus = std::monostate{};
    if (randomized) taus = tau_stream(seed, i);
    try {
      const Trajectory traj = integrate(ivp, scheme, grid, std::move(taus), cfg);
      double worst = 0.0;
      for (std::size_t j = 0; j <= grid.n(); ++j) {
        const double e = (ref[j] - traj.states[j]).norm();
        if (!std::isfinite(e)) {
          worst = kInf;
          break;
        }
        worst = std::max(worst, e);
      }
      errors[i] = worst;
    } catch (const Error& e) {
      throw e.with_path(i);
    }
  });
  return errors;
}

ErrorEstimate mc_error(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid, std::size_t paths,
                       double p, std::uint64_t seed, const StageSolverConfig& cfg,
                       const ReferenceSolution& reference) {
  require(p >= 2.0 && std::isfinite(p), "mc_error: p must lie in [2, inf)");
  require(paths >= 1, "mc_error: need at least one path");
  ErrorEstimate est;
  est.scheme = scheme;
  est.h = grid.h();
  est.p = p;
  est.paths = is_randomized(scheme) ? paths : 1;

  const std::vector<double> errors =
      path_max_errors(ivp, scheme, grid, est.paths, seed, cfg, reference);

  // Accumulate in path-index order so the result does not depend on threads.
  double sum = 0.0;
  for (double e : errors) {
    if (!std::isfinite(e)) est.non_finite = true;
    sum += std::pow(e, p);
  }
  const double m = static_cast<double>(est.paths);
  const double mean = sum / m;
  if (est.non_finite) {
    est.value = kInf;
    est.std_error = kInf;
    return est;
  }
  est.value = std::pow(mean, 1.0 / p);
  if (est.paths > 1 && mean > 0.0) {
    double ss = 0.0;
    for (double e : errors) {
      const double d = std::pow(e, p) - mean;
      ss += d * d;
    }
    const double se_mean = std::sqrt(ss / (m - 1.0) / m);
    // Delta method for mean^{1/p}.
    est.std_error = se_mean * std::pow(mean, 1.0 / p - 1.0) / p;
  }
  return est;
}

ErrorEstimate mc_error(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid, std::size_t paths,
                       double p, std::uint64_t seed, const StageSolverConfig& cfg) {
  const ReferenceSolution reference(ivp, grid.n(), cfg);
  return mc_error(ivp, scheme, grid, paths, p, seed, cfg, reference);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  require(sxx > 0.0, "fit_line: abscissae must not all coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (fit.intercept + fit.slope * x[k]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

OrderFit convergence_order(const Ivp& ivp, SchemeId scheme, std::vector<double> h_list,
                           std::size_t paths, double p, std::uint64_t seed,
                           const StageSolverConfig& cfg) {
  require(h_list.size() >= 3, "convergence_order: need at least three step sizes");
  std::sort(h_list.begin(), h_list.end(), std::greater<>());
  require(std::adjacent_find(h_list.begin(), h_list.end()) == h_list.end(),
          "convergence_order: step sizes must be distinct");
  const double span = ivp.t1() - ivp.t0();
  std::vector<TimeGrid> grids;
  for (double h : h_list) {
    require(h > 0.0, "convergence_order: step sizes must be positive");
    const long long n = std::llround(span / h);
    if (n < 1 || std::abs(static_cast<double>(n) * h - span) > 1e-9 * span) {
      std::ostringstream os;
      os << "convergence_order: h = " << h << " does not divide [" << ivp.t0() << ", "
         << ivp.t1() << "]";
      fail(ErrorKind::InvalidArgument, os.str());
    }
    grids.push_back(make_grid(ivp.t0(), ivp.t1(), static_cast<std::size_t>(n)));
  }

  const ReferenceSolution reference(ivp, grids.back().n(), cfg);
  OrderFit fit;
  std::vector<double> xs, ys;
  for (const TimeGrid& grid : grids) {
    ErrorEstimate e = mc_error(ivp, scheme, grid, paths, p, seed, cfg, reference);
    if (!(e.value > 0.0) || !std::isfinite(e.value)) {
      std::ostringstream os;
      os << "error estimate at h = " << grid.h() << " is " << e.value
         << "; cannot fit a log-log line";
      fail(ErrorKind::DegenerateFit, os.str());
    }
    xs.push_back(std::log(grid.h()));
    ys.push_back(std::log(e.value));
    fit.levels.push_back(e);
  }
  const LineFit line = fit_line(xs, ys);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r2 = line.r2;
  return fit;
}

std::vector<StiffPath> stiff_demo(SchemeId scheme, double h, std::size_t n_paths,
                                  std::uint64_t seed, const StageSolverConfig& cfg) {
  const Ivp ivp = problems::stiff();
  const double span = ivp.t1() - ivp.t0();
  const long long n = std::llround(span / h);
  require(h > 0.0 && n >= 1 && std::abs(static_cast<double>(n) * h - span) <= 1e-9 * span,
          "stiff_demo: h must divide [0, 50]");
  if (is_implicit(scheme))
    require(cfg.method == StageMethod::Affine,
            "stiff_demo: implicit schemes need the Affine stage solver (L h exceeds 1)");
  const TimeGrid grid = make_grid(ivp.t0(), ivp.t1(), static_cast<std::size_t>(n));
  const bool randomized = is_randomized(scheme);
  const std::size_t count = randomized ? n_paths : 1;

  std::vector<StiffPath> out(count);
  parallel_for(count, [&](std::size_t i) {
    TauSource taus = std::monostate{};
    if (randomized) taus = tau_stream(seed, i);
    const Trajectory traj = [&] {
      try {
        return integrate(ivp, scheme, grid, std::move(taus), cfg);
      } catch (const Error& e) {
        throw e.with_path(i);
      }
    }();
    StiffPath& path = out[i];
    path.path = i;
    path.rows.reserve(grid.n() + 1);
    for (std::size_t j = 0; j <= grid.n(); ++j) {
      const double t = grid.t(j);
      const double v = traj.states[j][0];
      const double z = ivp.exact(t)[0];
      const double err = v - z;
      path.rows.push_back({t, v, z, err});
      if (!std::isfinite(err)) {
        path.finite = false;
        path.max_error = kInf;
      } else if (path.finite) {
        path.max_error = std::max(path.max_error, std::abs(err));
      }
    }
  });
  return out;
}

}  // namespace randrk::experiments
