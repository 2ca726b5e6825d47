#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace randrk {

using State = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using RhsFn = std::function<State(double t, const State& x)>;
using ExactFn = std::function<State(double t)>;

// f(t, x) = A(t) x + b(t)
struct AffineForm {
  std::function<Matrix(double)> matrix;
  std::function<State(double)> offset;
};

// Regularity constants of the class F^rho: growth K, Lipschitz L, Hölder
// exponent rho in time. All optional; L drives the Picard contraction guard.
struct Regularity {
  std::optional<double> growth;
  std::optional<double> lipschitz;
  std::optional<double> holder;
};

class Ivp {
 public:
  Ivp(std::string name, double t0, double t1, State eta, RhsFn rhs);

  Ivp& with_affine(AffineForm form);
  Ivp& with_exact(ExactFn exact);
  Ivp& with_regularity(Regularity reg);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return static_cast<std::size_t>(eta_.size()); }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  const State& eta() const { return eta_; }

  State rhs(double t, const State& x) const { return rhs_(t, x); }

  bool has_affine() const { return affine_.has_value(); }
  const AffineForm& affine() const;
  bool has_exact() const { return static_cast<bool>(exact_); }
  State exact(double t) const;
  const Regularity& regularity() const { return reg_; }

  // Checks exact(t0) == eta and the affine contract on 100 random samples.
  // Throws Error(InvalidArgument) on violation.
  void validate(unsigned long long sample_seed = 20240601ULL) const;

 private:
  std::string name_;
  double t0_;
  double t1_;
  State eta_;
  RhsFn rhs_;
  std::optional<AffineForm> affine_;
  ExactFn exact_;
  Regularity reg_;
};

// Uniform grid t_j = a + j h, h = (b - a) / n.
class TimeGrid {
 public:
  TimeGrid(double a, double b, std::size_t n);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t n() const { return n_; }
  double h() const { return h_; }
  double t(std::size_t j) const;

 private:
  double a_;
  double b_;
  std::size_t n_;
  double h_;
};

TimeGrid make_grid(double a, double b, std::size_t n);

enum class SchemeId { DetRK2, RandExplRK2, DetS1, DetS2, S1, S2 };

inline constexpr SchemeId kAllSchemes[] = {SchemeId::DetRK2, SchemeId::RandExplRK2,
                                           SchemeId::DetS1,  SchemeId::DetS2,
                                           SchemeId::S1,     SchemeId::S2};

bool is_randomized(SchemeId id);
bool is_implicit(SchemeId id);
std::string_view to_string(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view text);

struct Trajectory {
  TimeGrid grid;
  SchemeId scheme;
  std::vector<State> states;  // V^0 ... V^n
  std::vector<double> taus;   // tau_1 ... tau_n, empty for deterministic schemes
  std::vector<int> stage_iters;
  bool converged = true;

  bool all_finite() const;
};

}  // namespace randrk
