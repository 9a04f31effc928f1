#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ellterm/polynomials.hpp"
#include "ellterm/smoothing.hpp"

using namespace ellterm;
using smooth::DiscMap;
using smooth::SmoothProbeSpec;

namespace {

SmoothProbeSpec gaussian_spec(DiscMap map, double beta) {
  SmoothProbeSpec spec{map, beta, 0.5, smooth::gaussian_cutoff(), false};
  return spec;
}

}  // namespace

TEST_CASE("discriminant maps agree with the polynomial discriminant") {
  for (long long a2 : {-20LL, -3LL, 1LL, 7LL, 20LL}) {
    auto map = DiscMap::gl2(a2);
    CHECK(map.degree() == 2);
    CHECK(map.arity() == 1);
    for (long long x = -20; x <= 20; ++x) {
      poly::CharPoly f({x, a2});
      CHECK(map.eval_integer({x}) == poly::discriminant(f));
      CHECK(map({static_cast<double>(x)}) ==
            doctest::Approx(static_cast<double>(poly::discriminant(f))));
    }
  }
  for (long long a3 : {1LL, -2LL, 3LL}) {
    auto map = DiscMap::gl3(a3);
    CHECK(map.arity() == 2);
    for (long long x1 = -6; x1 <= 6; ++x1) {
      for (long long x2 = -6; x2 <= 6; ++x2) {
        poly::CharPoly f({x1, x2, a3});
        CHECK(map.eval_integer({x1, x2}) == poly::discriminant(f));
      }
    }
  }
  CHECK_THROWS_AS(DiscMap::gl3(0), std::invalid_argument);
  CHECK_THROWS_AS(DiscMap::gl2(1).eval_integer({1, 2}), std::invalid_argument);
}

TEST_CASE("gradient matches finite differences at regular points") {
  auto check_grad = [](const DiscMap& map, const std::vector<double>& x) {
    auto g = map.gradient(x);
    REQUIRE(static_cast<int>(g.size()) == map.arity());
    const double h = 1e-6;
    for (int i = 0; i < map.arity(); ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      double fd = (map(xp) - map(xm)) / (2 * h);
      CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5));
    }
  };
  check_grad(DiscMap::gl2(1), {2.0});
  check_grad(DiscMap::gl2(-5), {-3.5});
  check_grad(DiscMap::gl3(1), {2.0, -1.0});
  check_grad(DiscMap::gl3(-2), {0.5, 3.0});

  // the critical point of the a3 = 1 map: gradient vanishes on the singular set
  auto g = DiscMap::gl3(1).gradient({3.0, 3.0});
  CHECK(std::fabs(g[0]) <= 1e-9);
  CHECK(std::fabs(g[1]) <= 1e-9);
  CHECK(DiscMap::gl3(1)({3.0, 3.0}) == doctest::Approx(0.0));
}

TEST_CASE("probe function definition and zero extension") {
  auto spec = gaussian_spec(DiscMap::gl2(1), 0.3);
  spec.validate();
  CHECK(std::isinf(spec.condition_margin()));
  CHECK(spec.condition_margin() > 0);

  // regular point: |D|^-beta exp(-|D|^-2 alpha)
  double d = std::fabs(DiscMap::gl2(1)({3.0}));  // |9 - 4| = 5
  double want = std::pow(d, -0.3) * std::exp(-std::pow(d, -1.0));
  CHECK(smooth::probe_f(spec, {3.0}) == doctest::Approx(want).epsilon(1e-14));

  // D = 0 at x = +-2: extension by zero
  CHECK(smooth::probe_f(spec, {2.0}) == 0.0);
  CHECK(smooth::probe_f(spec, {-2.0}) == 0.0);
}

TEST_CASE("values decay toward the singular set under the gaussian cutoff") {
  for (double beta : {0.0, 0.3, 0.8}) {
    auto s2 = gaussian_spec(DiscMap::gl2(1), beta);
    auto r2 = smooth::probe_value_decay(s2, {2.0});
    CHECK(r2.all_monotone);
    CHECK(r2.max_final < 1e-8);
    CHECK(r2.rays.size() == 2);

    auto s3 = gaussian_spec(DiscMap::gl3(1), beta);
    auto r3 = smooth::probe_value_decay(s3, {3.0, 3.0});
    CHECK(r3.all_monotone);
    CHECK(r3.max_final < 1e-8);
    CHECK(r3.rays.size() == 8);
  }
}

TEST_CASE("derivative quotients vanish at the singular point when smooth") {
  for (double beta : {0.0, 0.8}) {
    auto spec = gaussian_spec(DiscMap::gl2(1), beta);
    auto probes = smooth::probe_derivatives(spec, {2.0}, 2);
    REQUIRE(!probes.empty());
    const auto& finest = probes.back();
    CHECK(finest.h <= 1e-5);
    CHECK(finest.max_first < 1e-6);
    CHECK(finest.max_all < 1e-4);
  }
  auto spec3 = gaussian_spec(DiscMap::gl3(1), 0.3);
  auto probes3 = smooth::probe_derivatives(spec3, {3.0, 3.0}, 2);
  CHECK(probes3.back().max_first < 1e-6);
  CHECK(probes3.back().central.size() == 2);
  CHECK(probes3.back().second.size() == 2);
}

TEST_CASE("negative control: slow cutoff decay breaks the one-sided quotients") {
  SmoothProbeSpec bad{DiscMap::gl2(1), 0.8, 0.5, smooth::power_cutoff(2), true};
  CHECK(bad.condition_margin() < 0);
  auto probes = smooth::probe_derivatives(bad, {2.0}, 1);
  const auto& finest = probes.back();
  // one-sided quotients blow up...
  CHECK(finest.max_first > 1e-2);
  // ...while central differences nearly cancel across the sign-symmetric
  // singularity, which is why they are not the whole probe
  CHECK(std::fabs(finest.central[0]) < 1e-2);
}

TEST_CASE("spec validation") {
  SmoothProbeSpec bad{DiscMap::gl2(1), 0.8, 0.5, smooth::power_cutoff(2), false};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.allow_condition_violation = true;
  CHECK_NOTHROW(bad.validate());

  SmoothProbeSpec zero_alpha{DiscMap::gl2(1), 0.0, 0.0, smooth::gaussian_cutoff(), false};
  CHECK_THROWS_AS(zero_alpha.validate(), std::invalid_argument);

  auto spec = gaussian_spec(DiscMap::gl2(1), 0.3);
  CHECK_THROWS_AS(smooth::probe_f(spec, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(smooth::probe_value_decay(spec, {1.0, 2.0}), std::invalid_argument);

  CHECK_THROWS_AS(smooth::power_cutoff(0), std::invalid_argument);
  auto pw = smooth::power_cutoff(3);
  CHECK(pw.decay_order == 3.0);
  CHECK(pw.phi(1.0) == doctest::Approx(0.125));
  auto gs = smooth::gaussian_cutoff();
  CHECK(gs.phi(2.0) == doctest::Approx(std::exp(-4.0)));
}
