#pragma once

#include "randrk/ivp.hpp"
#include "randrk/tau_stream.hpp"

#include <functional>
#include <variant>

namespace randrk {

enum class StageMethod { Picard, Affine, Newton };

struct StageSolverConfig {
  StageMethod method = StageMethod::Picard;
  double tol = 1e-12;  // relative residual: ||v - map(v)|| <= tol (1 + ||v||)
  int max_iter = 100;
  bool lipschitz_guard = true;

  void validate() const;
};

struct StepResult {
  State state;
  State stage;
  int iters = 0;
  double residual = 0.0;
};

struct StageSolution {
  State value;
  int iters = 0;
  double residual = 0.0;
};

using StageMap = std::function<State(const State&)>;

// Fixed-point iteration v_k = map(v_{k-1}) from v_0 = start. Returns the
// first iterate v_k (k >= 1) whose residual ||v_k - map(v_k)|| meets the
// tolerance. Throws NonConvergence on max_iter or when an iterate leaves
// the ball of radius 1e12 (1 + ||start||).
StageSolution solve_stage_picard(const StageMap& map, const State& start,
                                 const StageSolverConfig& cfg);

// Damped Newton on v - map(v) = 0 with a forward-difference Jacobian.
StageSolution solve_stage_newton(const StageMap& map, const State& start,
                                 const StageSolverConfig& cfg);

// Direct solve of x = c0 + c1 h (A(theta) x + b(theta)). Throws SingularStage
// when I - c1 h A(theta) is singular to working precision.
State solve_stage_affine(const Ivp& ivp, double theta, const State& c0, double c1, double h);

StepResult step_det_rk2(const Ivp& ivp, double t, const State& v, double h);
StepResult step_rand_expl_rk2(const Ivp& ivp, double t, const State& v, double h, double tau);
StepResult step_s1(const Ivp& ivp, double t, const State& v, double h, double tau,
                   const StageSolverConfig& cfg);
StepResult step_s2(const Ivp& ivp, double t, const State& v, double h, double tau,
                   const StageSolverConfig& cfg);
StepResult step_det_s1(const Ivp& ivp, double t, const State& v, double h,
                       const StageSolverConfig& cfg);
StepResult step_det_s2(const Ivp& ivp, double t, const State& v, double h,
                       const StageSolverConfig& cfg);

// tau is ignored by deterministic schemes.
StepResult step(SchemeId scheme, const Ivp& ivp, double t, const State& v, double h, double tau,
                const StageSolverConfig& cfg);

// Replaces the random draws with a constant, e.g. 1/2 to recover det S1/S2.
struct FixedTau {
  double value;
};

using TauSource = std::variant<std::monostate, TauStream, FixedTau>;

// Runs the scheme over the grid. A tau source is required iff the scheme is
// randomized. Step errors are rethrown with the 1-based step index attached.
Trajectory integrate(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid, TauSource taus,
                     const StageSolverConfig& cfg = {});

}  // namespace randrk
