#include "randrk/schemes.hpp"

#include "randrk/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace randrk {

namespace {

constexpr double kDivergenceFactor = 1e12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool within_tol(double residual, const State& v, double tol) {
  return residual <= tol * (1.0 + v.norm());
}

void check_tau(double tau) {
  require(tau >= 0.0 && tau < 1.0, "tau must lie in [0, 1)");
}

void check_h(double h) { require(h > 0.0 && std::isfinite(h), "step size must be positive"); }

void guard_contraction(const Ivp& ivp, const StageSolverConfig& cfg, double factor,
                       const char* what) {
  if (cfg.method != StageMethod::Picard || !cfg.lipschitz_guard) return;
  const auto& lip = ivp.regularity().lipschitz;
  if (lip && *lip * factor >= 1.0) {
    std::ostringstream os;
    os << what << ": Picard map is not a contraction (L = " << *lip << ", factor " << factor
       << ", product " << *lip * factor << " >= 1)";
    fail(ErrorKind::ContractionViolated, os.str());
  }
}

}  // namespace

void StageSolverConfig::validate() const {
  require(tol > 0.0, "stage solver tolerance must be positive");
  require(max_iter >= 1, "stage solver max_iter must be at least 1");
}

StageSolution solve_stage_picard(const StageMap& map, const State& start,
                                 const StageSolverConfig& cfg) {
  cfg.validate();
  const double bound = kDivergenceFactor * (1.0 + start.norm());
  State v = map(start);
  for (int k = 1; k <= cfg.max_iter; ++k) {
    if (!v.allFinite() || v.norm() > bound) {
      std::ostringstream os;
      os << "Picard iteration diverged after " << k << " iterations";
      fail(ErrorKind::NonConvergence, os.str());
    }
    State next = map(v);
    const double residual = (v - next).norm();
    if (within_tol(residual, v, cfg.tol)) return {std::move(v), k, residual};
    v = std::move(next);
  }
  std::ostringstream os;
  os << "Picard iteration did not reach tol " << cfg.tol << " in " << cfg.max_iter
     << " iterations";
  fail(ErrorKind::NonConvergence, os.str());
}

StageSolution solve_stage_newton(const StageMap& map, const State& start,
                                 const StageSolverConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = start.size();
  const double bound = kDivergenceFactor * (1.0 + start.norm());
  State x = start;
  State g = x - map(x);
  double gnorm = g.norm();
  for (int k = 0; k < cfg.max_iter; ++k) {
    if (within_tol(gnorm, x, cfg.tol)) return {std::move(x), k, gnorm};
    Matrix jac = Matrix::Identity(d, d);
    const State fx = x - g;  // map(x)
    for (Eigen::Index i = 0; i < d; ++i) {
      const double delta = std::sqrt(kEps) * std::max(1.0, std::abs(x[i]));
      State xp = x;
      xp[i] += delta;
      jac.col(i) -= (map(xp) - fx) / delta;
    }
    Eigen::FullPivLU<Matrix> lu(jac);
    if (!lu.isInvertible())
      fail(ErrorKind::NonConvergence, "Newton stage solve hit a singular Jacobian");
    const State dx = lu.solve(-g);
    // Backtracking on ||x - map(x)||.
    double alpha = 1.0;
    State trial;
    State gtrial;
    double tnorm = 0.0;
    for (int halving = 0; halving < 30; ++halving) {
      trial = x + alpha * dx;
      gtrial = trial - map(trial);
      tnorm = gtrial.norm();
      if (std::isfinite(tnorm) && tnorm <= (1.0 - 1e-4 * alpha) * gnorm) break;
      alpha *= 0.5;
    }
    x = std::move(trial);
    g = std::move(gtrial);
    gnorm = tnorm;
    if (!x.allFinite() || x.norm() > bound)
      fail(ErrorKind::NonConvergence, "Newton stage solve diverged");
  }
  if (within_tol(gnorm, x, cfg.tol)) return {std::move(x), cfg.max_iter, gnorm};
  fail(ErrorKind::NonConvergence, "Newton stage solve did not converge");
}

State solve_stage_affine(const Ivp& ivp, double theta, const State& c0, double c1, double h) {
  const AffineForm& form = ivp.affine();
  const Matrix a = form.matrix(theta);
  const State b = form.offset(theta);
  const double scale = c1 * h;
  const State rhs = c0 + scale * b;
  if (c0.size() == 1) {
    const double coupling = scale * a(0, 0);
    const double m = 1.0 - coupling;
    if (std::abs(m) <= kEps * std::max(1.0, std::abs(coupling)))
      fail(ErrorKind::SingularStage, "stage equation is singular (1 - c1 h A = 0)");
    return rhs / m;
  }
  const Matrix coupling = scale * a;
  const Matrix m = Matrix::Identity(a.rows(), a.cols()) - coupling;
  Eigen::FullPivLU<Matrix> lu(m);
  const double max_pivot = lu.maxPivot();
  if (max_pivot == 0.0)
    fail(ErrorKind::SingularStage, "stage equation is singular (I - c1 h A = 0)");
  lu.setThreshold(kEps * std::max(1.0, coupling.norm()) / max_pivot);
  if (!lu.isInvertible())
    fail(ErrorKind::SingularStage, "stage equation is singular (I - c1 h A not invertible)");
  return lu.solve(rhs);
}

StepResult step_rand_expl_rk2(const Ivp& ivp, double t, const State& v, double h, double tau) {
  check_h(h);
  check_tau(tau);
  StepResult r;
  r.stage = v + (tau * h) * ivp.rhs(t, v);
  r.state = v + h * ivp.rhs(t + tau * h, r.stage);
  return r;
}

StepResult step_det_rk2(const Ivp& ivp, double t, const State& v, double h) {
  return step_rand_expl_rk2(ivp, t, v, h, 0.5);
}

StepResult step_s1(const Ivp& ivp, double t, const State& v, double h, double tau,
                   const StageSolverConfig& cfg) {
  check_h(h);
  check_tau(tau);
  cfg.validate();
  guard_contraction(ivp, cfg, h * tau, "S1 stage");
  const double theta = t + tau * h;
  auto map = [&](const State& x) -> State { return v + (tau * h) * ivp.rhs(theta, x); };

  StepResult r;
  switch (cfg.method) {
    case StageMethod::Picard: {
      StageSolution s = solve_stage_picard(map, v, cfg);
      r.stage = std::move(s.value);
      r.iters = s.iters;
      r.residual = s.residual;
      break;
    }
    case StageMethod::Newton: {
      StageSolution s = solve_stage_newton(map, v, cfg);
      r.stage = std::move(s.value);
      r.iters = s.iters;
      r.residual = s.residual;
      break;
    }
    case StageMethod::Affine:
      r.stage = solve_stage_affine(ivp, theta, v, tau, h);
      r.iters = 1;
      r.residual = (r.stage - map(r.stage)).norm();
      break;
  }
  r.state = v + h * ivp.rhs(theta, r.stage);
  return r;
}

StepResult step_s2(const Ivp& ivp, double t, const State& v, double h, double tau,
                   const StageSolverConfig& cfg) {
  check_h(h);
  check_tau(tau);
  cfg.validate();
  guard_contraction(ivp, cfg, h, "S2 update");
  const double theta = t + tau * h;
  auto map = [&](const State& x) -> State {
    return v + h * ivp.rhs(theta, (1.0 - tau) * v + tau * x);
  };

  StepResult r;
  switch (cfg.method) {
    case StageMethod::Picard: {
      StageSolution s = solve_stage_picard(map, v, cfg);
      r.state = std::move(s.value);
      r.iters = s.iters;
      r.residual = s.residual;
      break;
    }
    case StageMethod::Newton: {
      StageSolution s = solve_stage_newton(map, v, cfg);
      r.state = std::move(s.value);
      r.iters = s.iters;
      r.residual = s.residual;
      break;
    }
    case StageMethod::Affine: {
      // For affine f, f(theta, (1-tau) V + tau x) = (1-tau) f(theta, V) + tau f(theta, x),
      // so x = [V + (1-tau) h f(theta, V)] + tau h f(theta, x).
      const State c0 = v + ((1.0 - tau) * h) * ivp.rhs(theta, v);
      r.state = solve_stage_affine(ivp, theta, c0, tau, h);
      r.iters = 1;
      r.residual = (r.state - map(r.state)).norm();
      break;
    }
  }
  r.stage = (1.0 - tau) * v + tau * r.state;
  return r;
}

StepResult step_det_s1(const Ivp& ivp, double t, const State& v, double h,
                       const StageSolverConfig& cfg) {
  return step_s1(ivp, t, v, h, 0.5, cfg);
}

StepResult step_det_s2(const Ivp& ivp, double t, const State& v, double h,
                       const StageSolverConfig& cfg) {
  return step_s2(ivp, t, v, h, 0.5, cfg);
}

StepResult step(SchemeId scheme, const Ivp& ivp, double t, const State& v, double h, double tau,
                const StageSolverConfig& cfg) {
  switch (scheme) {
    case SchemeId::DetRK2: return step_det_rk2(ivp, t, v, h);
    case SchemeId::RandExplRK2: return step_rand_expl_rk2(ivp, t, v, h, tau);
    case SchemeId::DetS1: return step_det_s1(ivp, t, v, h, cfg);
    case SchemeId::DetS2: return step_det_s2(ivp, t, v, h, cfg);
    case SchemeId::S1: return step_s1(ivp, t, v, h, tau, cfg);
    case SchemeId::S2: return step_s2(ivp, t, v, h, tau, cfg);
  }
  fail(ErrorKind::InvalidArgument, "unknown scheme");
}

Trajectory integrate(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid, TauSource taus,
                     const StageSolverConfig& cfg) {
  cfg.validate();
  const bool randomized = is_randomized(scheme);
  const bool has_taus = !std::holds_alternative<std::monostate>(taus);
  if (randomized && !has_taus)
    fail(ErrorKind::InvalidArgument,
         std::string("scheme ") + std::string(to_string(scheme)) + " needs a tau source");
  if (!randomized && has_taus)
    fail(ErrorKind::InvalidArgument, std::string("scheme ") + std::string(to_string(scheme)) +
                                         " is deterministic and takes no tau source");
  if (is_implicit(scheme) && cfg.method == StageMethod::Affine && !ivp.has_affine())
    fail(ErrorKind::InvalidArgument, "Affine stage solver requires an affine problem");
  if (auto* fixed = std::get_if<FixedTau>(&taus)) check_tau(fixed->value);

  Trajectory traj{grid, scheme, {}, {}, {}, true};
  const std::size_t n = grid.n();
  traj.states.reserve(n + 1);
  traj.states.push_back(ivp.eta());
  traj.stage_iters.reserve(n);
  if (randomized) traj.taus.reserve(n);

  const double h = grid.h();
  for (std::size_t j = 1; j <= n; ++j) {
    double tau = 0.5;
    if (auto* stream = std::get_if<TauStream>(&taus)) tau = stream->next();
    else if (auto* fixed = std::get_if<FixedTau>(&taus)) tau = fixed->value;
    try {
      StepResult r = step(scheme, ivp, grid.t(j - 1), traj.states.back(), h, tau, cfg);
      if (is_implicit(scheme)) {
        // S1 solves for the stage value, S2 for the new state.
        const bool s1_like = scheme == SchemeId::S1 || scheme == SchemeId::DetS1;
        if (!within_tol(r.residual, s1_like ? r.stage : r.state, cfg.tol))
          traj.converged = false;
      }
      traj.stage_iters.push_back(r.iters);
      traj.states.push_back(std::move(r.state));
    } catch (const Error& e) {
      throw e.with_step(j);
    }
    if (randomized) traj.taus.push_back(tau);
  }
  return traj;
}

}  // namespace randrk
