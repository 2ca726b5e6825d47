#pragma once

#include "randrk/ivp.hpp"
#include "randrk/schemes.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace randrk::experiments {

// Exact solution where the problem carries one, otherwise det S2 on a
// reference grid 64x finer than the finest experimental grid.
class ReferenceSolution {
 public:
  ReferenceSolution(const Ivp& ivp, std::size_t finest_n, const StageSolverConfig& cfg = {});

  State at(double t) const;
  bool uses_exact() const { return exact_; }

 private:
  const Ivp* ivp_;
  bool exact_;
  std::optional<TimeGrid> grid_;
  std::vector<State> states_;
};

State reference_solution(const Ivp& ivp, double t);

struct ErrorEstimate {
  SchemeId scheme = SchemeId::S2;
  double h = 0.0;
  double p = 2.0;
  std::size_t paths = 1;
  double value = 0.0;
  double std_error = 0.0;
  bool non_finite = false;  // some path produced a non-finite state
};

// (E max_j ||ref(t_j) - V^j||^p)^{1/p} estimated over M paths, path i driven
// by tau_stream(seed, i). Deterministic schemes run a single path.
ErrorEstimate mc_error(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid, std::size_t paths,
                       double p, std::uint64_t seed, const StageSolverConfig& cfg = {});

// Same, against a caller-supplied reference and tau source factory. Used by
// the convergence driver to share a reference across levels.
ErrorEstimate mc_error(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid, std::size_t paths,
                       double p, std::uint64_t seed, const StageSolverConfig& cfg,
                       const ReferenceSolution& reference);

// Per-path max errors, in path-index order (exposed for the moment tests).
std::vector<double> path_max_errors(const Ivp& ivp, SchemeId scheme, const TimeGrid& grid,
                                    std::size_t paths, std::uint64_t seed,
                                    const StageSolverConfig& cfg,
                                    const ReferenceSolution& reference);

struct OrderFit {
  std::vector<ErrorEstimate> levels;  // decreasing h
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct LineFit {
  double slope;
  double intercept;
  double r2;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

OrderFit convergence_order(const Ivp& ivp, SchemeId scheme, std::vector<double> h_list,
                           std::size_t paths, double p, std::uint64_t seed,
                           const StageSolverConfig& cfg = {});

struct StiffRow {
  double t;
  double v;
  double exact;
  double error;
};

struct StiffPath {
  std::uint64_t path = 0;
  std::vector<StiffRow> rows;
  double max_error = 0.0;  // +inf once any row is non-finite
  bool finite = true;
};

// Problem z' = -50 (z - cos t) on [0, 50]; one table for deterministic
// schemes, n_paths tables otherwise.
std::vector<StiffPath> stiff_demo(SchemeId scheme, double h, std::size_t n_paths,
                                  std::uint64_t seed, const StageSolverConfig& cfg);

}  // namespace randrk::experiments
