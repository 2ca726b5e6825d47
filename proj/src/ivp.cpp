#include "randrk/ivp.hpp"

#include "randrk/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace randrk {

Ivp::Ivp(std::string name, double t0, double t1, State eta, RhsFn rhs)
    : name_(std::move(name)), t0_(t0), t1_(t1), eta_(std::move(eta)), rhs_(std::move(rhs)) {
  require(std::isfinite(t0_) && std::isfinite(t1_) && t0_ < t1_, "Ivp: need t0 < t1");
  require(eta_.size() >= 1, "Ivp: dimension must be at least 1");
  require(static_cast<bool>(rhs_), "Ivp: missing right-hand side");
}

Ivp& Ivp::with_affine(AffineForm form) {
  require(form.matrix && form.offset, "Ivp: affine form needs both A(t) and b(t)");
  affine_ = std::move(form);
  return *this;
}

Ivp& Ivp::with_exact(ExactFn exact) {
  exact_ = std::move(exact);
  return *this;
}

Ivp& Ivp::with_regularity(Regularity reg) {
  auto positive = [](const std::optional<double>& v) { return !v || *v > 0.0; };
  require(positive(reg.growth) && positive(reg.lipschitz), "Ivp: K and L must be positive");
  require(!reg.holder || (*reg.holder > 0.0 && *reg.holder <= 1.0),
          "Ivp: Hölder exponent must lie in (0, 1]");
  reg_ = reg;
  return *this;
}

const AffineForm& Ivp::affine() const {
  if (!affine_) fail(ErrorKind::InvalidArgument, "Ivp '" + name_ + "' has no affine form");
  return *affine_;
}

State Ivp::exact(double t) const {
  if (!exact_) fail(ErrorKind::InvalidArgument, "Ivp '" + name_ + "' has no exact solution");
  return exact_(t);
}

void Ivp::validate(unsigned long long sample_seed) const {
  if (exact_) {
    const double gap = (exact_(t0_) - eta_).norm();
    require(gap <= 1e-12, "Ivp '" + name_ + "': exact(t0) differs from eta");
  }
  if (affine_) {
    std::mt19937_64 gen(sample_seed);
    std::uniform_real_distribution<double> time(t0_, t1_);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int k = 0; k < 100; ++k) {
      const double t = time(gen);
      State x(eta_.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = coord(gen);
      const State lhs = rhs_(t, x);
      const State rhs = affine_->matrix(t) * x + affine_->offset(t);
      require((lhs - rhs).norm() <= 1e-10 * (1.0 + x.norm()),
              "Ivp '" + name_ + "': affine form disagrees with rhs");
    }
  }
}

TimeGrid::TimeGrid(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "make_grid: need a < b");
  require(n >= 1, "make_grid: need n >= 1");
  h_ = (b - a) / static_cast<double>(n);
}

double TimeGrid::t(std::size_t j) const {
  if (j == n_) return b_;
  return a_ + static_cast<double>(j) * h_;
}

TimeGrid make_grid(double a, double b, std::size_t n) { return TimeGrid(a, b, n); }

bool is_randomized(SchemeId id) {
  return id == SchemeId::RandExplRK2 || id == SchemeId::S1 || id == SchemeId::S2;
}

bool is_implicit(SchemeId id) {
  return id != SchemeId::DetRK2 && id != SchemeId::RandExplRK2;
}

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::DetRK2: return "det-rk2";
    case SchemeId::RandExplRK2: return "rand-expl-rk2";
    case SchemeId::DetS1: return "det-s1";
    case SchemeId::DetS2: return "det-s2";
    case SchemeId::S1: return "s1";
    case SchemeId::S2: return "s2";
  }
  return "?";
}

std::optional<SchemeId> parse_scheme(std::string_view text) {
  for (SchemeId id : kAllSchemes)
    if (to_string(id) == text) return id;
  return std::nullopt;
}

bool Trajectory::all_finite() const {
  return std::all_of(states.begin(), states.end(), [](const State& s) { return s.allFinite(); });
}

}  // namespace randrk
