#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ellterm/arith.hpp"
#include "ellterm/gamma_afe.hpp"

using namespace ellterm;
using afe::cplx;

namespace {

const double kPi = 3.14159265358979323846;

afe::CoefficientFn chi_coeffs(long long D) {
  return [D](long long n) { return static_cast<double>(arith::kronecker(D, n)); };
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

}  // namespace

TEST_CASE("complex gamma: classical values and identities") {
  CHECK(std::abs(afe::gamma_complex(0.5) - cplx(std::sqrt(kPi))) <= 1e-13);
  CHECK(std::abs(afe::gamma_complex(1.0) - cplx(1.0)) <= 1e-13);
  CHECK(std::abs(afe::gamma_complex(5.0) - cplx(24.0)) <= 1e-11);

  // recurrence across both half-planes
  for (double x : {-3.3, -1.7, -0.4, 0.3, 1.0, 2.5, 6.0}) {
    for (double y : {-8.0, -2.0, -0.5, 0.0, 0.7, 3.0, 9.0}) {
      cplx z(x, y);
      cplx lhs = afe::gamma_complex(z + cplx(1.0));
      cplx rhs = z * afe::gamma_complex(z);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs));
    }
  }

  // |Gamma(1+it)|^2 = pi t / sinh(pi t)
  for (double t : {0.5, 1.0, 3.0, 10.0}) {
    double got = std::abs(afe::gamma_complex(cplx(1.0, t)));
    double want = std::sqrt(kPi * t / std::sinh(kPi * t));
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
  }

  // conjugate symmetry
  for (cplx z : {cplx(0.7, 2.0), cplx(-1.3, 5.0), cplx(3.0, -11.0)}) {
    cplx a = afe::gamma_complex(std::conj(z));
    cplx b = std::conj(afe::gamma_complex(z));
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
  }

  CHECK_THROWS_AS(afe::gamma_complex(cplx(0.0)), afe::gamma_pole_error);
  CHECK_THROWS_AS(afe::gamma_complex(cplx(-1.0)), afe::gamma_pole_error);
  CHECK_THROWS_AS(afe::gamma_complex(cplx(-2.0)), afe::gamma_pole_error);
}

TEST_CASE("archimedean factors of the three stock shapes") {
  auto odd = afe::odd_quadratic_shape();
  auto even = afe::even_quadratic_shape();
  auto cubic = afe::cubic_galois_shape();
  odd.validate();
  even.validate();
  cubic.validate();

  CHECK(odd.a() == 0);
  CHECK(odd.b() == 1);
  CHECK(even.a() == 1);
  CHECK(even.b() == 0);
  CHECK(cubic.a() == 2);
  CHECK(cubic.b() == 0);
  CHECK(odd.real_place_consistent());
  CHECK(even.real_place_consistent());
  CHECK_FALSE(cubic.real_place_consistent());  // advisory only, see header

  // odd at s=1: pi^(-1/2) Gamma(1)
  CHECK(afe::gamma_factor(odd, 1.0).real() ==
        doctest::Approx(1 / std::sqrt(kPi)).epsilon(1e-12));
  // even at s=1: pi^(-1/2) Gamma(1/2) = 1
  CHECK(afe::gamma_factor(even, 1.0).real() == doctest::Approx(1.0).epsilon(1e-12));
  // cubic at s=2: pi^(-6) Gamma(1)^2
  CHECK(afe::gamma_factor(cubic, 2.0).real() ==
        doctest::Approx(std::pow(kPi, -6.0)).epsilon(1e-12));
  CHECK(std::fabs(afe::gamma_factor(odd, 1.0).imag()) <= 1e-14);

  // s=0 hits Gamma(0) only when a > 0
  CHECK_THROWS_AS(afe::gamma_factor(even, cplx(0.0)), afe::gamma_pole_error);
  CHECK_THROWS_AS(afe::gamma_factor(cubic, cplx(0.0)), afe::gamma_pole_error);
  CHECK(afe::gamma_factor(odd, cplx(0.0)).real() ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));

  afe::GammaShape bad;
  bad.d = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("stirling modulus tracks |Gamma| on vertical lines") {
  for (double sigma : {0.5, 1.0, 2.0, 3.0}) {
    for (double t : {10.0, 20.0, 50.0}) {
      double exact = std::abs(afe::gamma_complex(cplx(sigma, t)));
      double lead = afe::stirling_gamma(sigma, t);
      CHECK(std::fabs(exact / lead - 1) <= 2.0 / t);
    }
  }
  CHECK_THROWS_AS(afe::stirling_gamma(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("cutoff kernel: truncation height consistency") {
  afe::AFEConfig lo, hi;
  lo.T = 40;
  hi.T = 80;
  for (auto shape : {afe::odd_quadratic_shape(), afe::even_quadratic_shape()}) {
    auto klo = afe::CutoffKernel::make_v(shape, 1.0, lo);
    auto khi = afe::CutoffKernel::make_v(shape, 1.0, hi);
    CHECK(klo.tmax() == doctest::Approx(40.0));
    for (double y : {0.05, 0.3, 1.0, 5.0}) {
      auto a = klo.eval(y);
      auto b = khi.eval(y);
      double budget = 4 * (a.trunc + a.noise + b.trunc + b.noise) + 1e-12;
      CHECK(std::fabs(a.value - b.value) <= budget);
    }
  }
}

TEST_CASE("cutoff kernel: limits at both ends") {
  for (auto shape : {afe::odd_quadratic_shape(), afe::even_quadratic_shape()}) {
    auto k = afe::CutoffKernel::make_v(shape, 1.0);
    // V(y) -> 1 as y -> 0, linear envelope is generous
    for (double y : geometric_grid(1e-4, 1e-1, 13)) {
      auto e = k.eval(y);
      CHECK(std::fabs(e.value - 1.0) <= 50 * y);
    }
    // super-polynomial decay at large y
    CHECK(std::fabs(k.eval(50.0).value) < 1e-12);
    CHECK_THROWS_AS(k.eval(0.0), std::invalid_argument);
    CHECK_THROWS_AS(k.eval(-1.0), std::invalid_argument);
  }
  afe::AFEConfig bad;
  bad.sigma0 = 0;
  CHECK_THROWS_AS(afe::CutoffKernel::make_v(afe::odd_quadratic_shape(), 1.0, bad),
                  std::invalid_argument);
}

TEST_CASE("decay probe: weighted sup is finite and the tail falls off") {
  auto grid = geometric_grid(1.0, 50.0, 61);
  for (auto shape : {afe::odd_quadratic_shape(), afe::even_quadratic_shape()}) {
    auto r = afe::decay_check(shape, 1.0, 4, grid);
    CHECK(r.finite);
    CHECK(r.tail_decreasing);
    CHECK(r.sup_weighted > 0);
    CHECK(r.sup_weighted < 1e3);
    CHECK(r.points.size() == grid.size());

    auto r0 = afe::decay_check(shape, 1.0, 0, grid);
    CHECK(r0.sup_weighted <= 1.5);  // |V| itself stays of order one
  }
}

TEST_CASE("second AFE term: combined kernel matches the reference away from poles") {
  // odd character at s=1: gamma(1-s) is finite for the odd shape
  {
    auto shape = afe::odd_quadratic_shape();
    auto lam = chi_coeffs(-4);
    auto a = afe::afe_second_term(shape, 1.0, 4, lam);
    auto b = afe::afe_second_term_reference(shape, 1.0, 4, lam);
    CHECK(std::fabs(a.value - b.value) <= a.error + b.error + 1e-8);
  }
  // even character at s=0.6
  {
    auto shape = afe::even_quadratic_shape();
    auto lam = chi_coeffs(5);
    auto a = afe::afe_second_term(shape, 0.6, 5, lam);
    auto b = afe::afe_second_term_reference(shape, 0.6, 5, lam);
    CHECK(std::fabs(a.value - b.value) <= a.error + b.error + 1e-8);
  }
}

TEST_CASE("second AFE term survives the gamma(1-s) pole at s=1") {
  auto shape = afe::even_quadratic_shape();
  auto lam = chi_coeffs(5);
  CHECK_THROWS_AS(afe::afe_second_term_reference(shape, 1.0, 5, lam),
                  afe::gamma_pole_error);
  auto a = afe::afe_second_term(shape, 1.0, 5, lam);
  CHECK(std::isfinite(a.value));
  CHECK(a.terms_second > 0);
}

TEST_CASE("AFE value is independent of the balance parameter") {
  afe::AFEConfig cfg_small, cfg_large;
  cfg_small.X = 0.25;
  cfg_large.X = 4.0;
  auto a = afe::afe_quadratic(-4, 0.7, cfg_small);
  auto b = afe::afe_quadratic(-4, 0.7, cfg_large);
  CHECK(std::fabs(a.value - b.value) <= a.error + b.error + 1e-9);
}

TEST_CASE("AFE reproduces classical central values") {
  auto a = afe::afe_quadratic(-4, 1.0);
  CHECK(std::fabs(a.value - kPi / 4) <= 1e-8);
  CHECK(a.error <= 1e-6);
  CHECK_FALSE(a.truncated);

  auto b = afe::afe_quadratic(5, 1.0);
  CHECK(std::fabs(b.value - 0.43040894096400) <= 1e-8);

  CHECK_THROWS_AS(afe::afe_quadratic(12345 * 4 + 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(afe::afe_quadratic(-4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(afe::afe_quadratic(-4, 1.5), std::invalid_argument);
}
