#pragma once

#include <vector>

#include "ellterm/polynomials.hpp"

namespace ellterm::lfun {

// Real character n -> kronecker(D, n) attached to a discriminant D = 0,1 (mod 4).
// Periodic with period |D|; nontrivial (period sums vanish) unless D is 1 or a
// positive perfect square.
class QuadraticCharacter {
 public:
  explicit QuadraticCharacter(long long D);

  long long discriminant() const { return d_; }
  long long period() const { return d_ < 0 ? -d_ : d_; }
  bool trivial() const { return trivial_; }
  int operator()(long long n) const;

 private:
  long long d_;
  bool trivial_;
};

// Value with a rigorous accompanying bound: |true - value| <= error.
struct LValue {
  double value = 0;
  double error = 0;
};

// Partial sum sum_{n<=N_max} chi(n) n^{-s}. For nontrivial chi the tail obeys
// |tail| <= period / N_max^s (Abel summation against bounded partial character
// sums); for the trivial character s > 1 is required and the tail bound is the
// integral comparison. Full-period blocks are evaluated in closed form through
// digamma (s = 1) or Hurwitz zeta (s > 1), so large N_max costs O(period).
LValue l_value_direct(const QuadraticCharacter& chi, double s, long long n_max);

// Class number of a negative fundamental discriminant by enumerating reduced
// binary quadratic forms (|b| <= a <= c, b >= 0 when |b| = a or a = c).
long long class_number_bf(long long D);

// Regulator log(eps_D) of a positive fundamental discriminant, from the
// continued fraction of the reduced quadratic irrational of discriminant D.
// The unit is accumulated as a product of complete quotients, so only its
// logarithm is ever formed.
double regulator_bf(long long D);

struct ClassData {
  long long D = 0;       // fundamental discriminant
  long long h = 0;       // class number
  long long w = 2;       // number of roots of unity (D < 0 only)
  double regulator = 0;  // D > 0 only
};

// Gathers h, w, regulator for a fundamental discriminant. For D > 0 the class
// number is recovered analytically from L(1, chi_D) and the regulator.
ClassData class_data(long long D);

// L(1, chi_D) by the class number formula: 2 pi h / (w sqrt|D|) for D < 0,
// 2 h log(eps) / sqrt(D) for D > 0.
LValue l_value_cnf(const ClassData& cd);

// L-value of the possibly imprimitive character attached to delta = s^2 fund:
// L(1, chi_fund) times prod_{q | s} (1 - chi_fund(q)/q). Computed as the
// direct series of kronecker(delta, .); delta must not be a positive square.
LValue l_modified(long long delta, double s, long long n_max);

struct EulerRatio {
  double value = 1;
  std::vector<long long> ramified_skipped;  // primes skipped (factor 1)
};

// Truncated Euler product of zeta_E(s)/zeta(s) for the cubic field cut out by
// a Galois (square discriminant) elliptic cubic: split p contributes
// (1 - p^-s)^-2, inert p contributes (1 + p^-s + p^-2s)^-1, ramified p is
// skipped and reported. Requires s > 1.
EulerRatio dedekind_ratio_euler(const poly::CharPoly& f, double s, long long p_max);

// Exact partial-sum helpers, exposed for oracle use in tests.
double hurwitz_zeta(double s, double a);     // sum_{n>=0} (n+a)^-s, s > 1, a > 0
double digamma_diff(double a, long long j);  // psi(j + a) - psi(a) = sum_{i<j} 1/(i+a)

// Series length whose s = 1 tail bound period/N sits far below every tolerance
// in use; closed-form block summation keeps the cost O(period) regardless.
long long default_series_length(long long period);

}  // namespace ellterm::lfun
