#include "randrk/error.hpp"
#include "randrk/ivp.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace randrk;

TEST_CASE("make_grid spacing and endpoints") {
  const TimeGrid g = make_grid(0.0, 50.0, 100);
  CHECK(g.h() == 0.5);
  CHECK(g.t(100) == 50.0);
  CHECK(g.t(0) == 0.0);

  const TimeGrid one = make_grid(0.0, 1.0, 1);
  CHECK(one.h() == 1.0);
  CHECK(one.t(0) == 0.0);
  CHECK(one.t(1) == 1.0);

  const TimeGrid thirds = make_grid(0.0, 1.0, 3);
  CHECK(std::abs(thirds.t(2) - 2.0 / 3.0) <= std::numeric_limits<double>::epsilon());
}

TEST_CASE("make_grid rejects empty intervals and zero steps") {
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 4), Error);
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 4), Error);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0), Error);
  try {
    make_grid(0.0, 1.0, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("scheme names round-trip") {
  for (SchemeId id : kAllSchemes) {
    const auto parsed = parse_scheme(to_string(id));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == id);
  }
  CHECK_FALSE(parse_scheme("rk4").has_value());
  CHECK(is_randomized(SchemeId::S1));
  CHECK(is_randomized(SchemeId::RandExplRK2));
  CHECK_FALSE(is_randomized(SchemeId::DetS2));
  CHECK(is_implicit(SchemeId::DetS1));
  CHECK_FALSE(is_implicit(SchemeId::DetRK2));
}

TEST_CASE("Ivp validation catches inconsistent metadata") {
  State eta(1);
  eta << 1.0;
  auto rhs = [](double, const State& x) { State y = -x; return y; };

  Ivp good("decay", 0.0, 1.0, eta, rhs);
  good.with_exact([](double t) { State z(1); z << std::exp(-t); return z; });
  good.with_affine({[](double) { return Matrix::Constant(1, 1, -1.0); },
                    [](double) { return State::Zero(1); }});
  CHECK_NOTHROW(good.validate());

  Ivp bad_exact("decay", 0.0, 1.0, eta, rhs);
  bad_exact.with_exact([](double t) { State z(1); z << 2.0 * std::exp(-t); return z; });
  CHECK_THROWS_AS(bad_exact.validate(), Error);

  Ivp bad_affine("decay", 0.0, 1.0, eta, rhs);
  bad_affine.with_affine({[](double) { return Matrix::Constant(1, 1, -1.0); },
                          [](double) { return State::Constant(1, 1e-3); }});
  CHECK_THROWS_AS(bad_affine.validate(), Error);

  CHECK_THROWS_AS(Ivp("flip", 1.0, 0.0, eta, rhs), Error);
  CHECK_THROWS_AS(Ivp("empty", 0.0, 1.0, State(0), rhs), Error);
}

TEST_CASE("Trajectory finiteness") {
  Trajectory traj{make_grid(0.0, 1.0, 2), SchemeId::DetS2, {}, {}, {}, true};
  traj.states = {State::Ones(1), State::Ones(1), State::Ones(1)};
  CHECK(traj.all_finite());
  traj.states[2][0] = std::numeric_limits<double>::infinity();
  CHECK_FALSE(traj.all_finite());
}
