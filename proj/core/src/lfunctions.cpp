#include "ellterm/lfunctions.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ellterm/arith.hpp"

namespace ellterm::lfun {

namespace {

constexpr double kEps = 2.22e-16;

long long isqrt(long long n) {
  long long r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n))));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<long long> primes_upto(long long n) {
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  std::vector<long long> ps;
  for (long long i = 2; i <= n; ++i) {
    if (!comp[static_cast<std::size_t>(i)]) {
      ps.push_back(i);
      for (long long j = i * i; j <= n; j += i) comp[static_cast<std::size_t>(j)] = true;
    }
  }
  return ps;
}

}  // namespace

QuadraticCharacter::QuadraticCharacter(long long D) : d_(D) {
  if (D == 0) throw std::invalid_argument("QuadraticCharacter: D must be nonzero");
  long long r = ((D % 4) + 4) % 4;
  if (r == 2 || r == 3)
    throw std::invalid_argument("QuadraticCharacter: D must be 0 or 1 (mod 4)");
  trivial_ = D == 1 || (D > 0 && arith::is_perfect_square(D));
}

int QuadraticCharacter::operator()(long long n) const { return arith::kronecker(d_, n); }

double digamma_diff(double a, long long j) {
  if (j <= 0) return 0;
  return boost::math::digamma(static_cast<double>(j) + a) - boost::math::digamma(a);
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1) || !(a > 0)) throw std::invalid_argument("hurwitz_zeta: need s > 1, a > 0");
  double acc = 0;
  while (a < 16) {
    acc += std::pow(a, -s);
    a += 1;
  }
  const double am = std::pow(a, -s);
  acc += a * am / (s - 1) + 0.5 * am;
  // Euler-Maclaurin correction; successive-term recurrence on B_{2i}/(2i)!.
  static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  double term = bern[0] / 2.0 * s * am / a;  // i = 1
  acc += term;
  for (int i = 1; i < 7; ++i) {
    double ratio = (bern[i] / bern[i - 1]) * (s + 2 * i - 1) * (s + 2 * i) /
                   ((2 * i + 1) * (2 * i + 2) * a * a);
    term *= ratio;
    acc += term;
    if (std::fabs(term) < kEps * std::fabs(acc)) break;
  }
  return acc;
}

LValue l_value_direct(const QuadraticCharacter& chi, double s, long long n_max) {
  if (!(s >= 1)) throw std::invalid_argument("l_value_direct: s must be >= 1");
  if (n_max < 1) throw std::invalid_argument("l_value_direct: N_max must be >= 1");
  if (chi.trivial() && s == 1)
    throw std::invalid_argument("l_value_direct: trivial character diverges at s = 1");

  const long long P = chi.period();
  std::vector<int> table(static_cast<std::size_t>(P));
  for (long long r = 0; r < P; ++r) table[static_cast<std::size_t>(r)] = chi(r);

  const long long J = n_max / P;
  double value = 0;
  double absacc = 0;
  if (J > 0) {
    for (long long r = 1; r <= P; ++r) {
      int c = table[static_cast<std::size_t>(r % P)];
      if (c == 0) continue;
      double block;
      if (s == 1) {
        block = digamma_diff(static_cast<double>(r) / P, J) / P;
      } else {
        double a = static_cast<double>(r) / P;
        block = std::pow(static_cast<double>(P), -s) *
                (hurwitz_zeta(s, a) - hurwitz_zeta(s, a + static_cast<double>(J)));
      }
      value += c * block;
      absacc += std::fabs(block);
    }
  }
  for (long long n = J * P + 1; n <= n_max; ++n) {
    int c = table[static_cast<std::size_t>(n % P)];
    if (c == 0) continue;
    double t = c / std::pow(static_cast<double>(n), s);
    value += t;
    absacc += std::fabs(t);
  }

  double tail;
  if (chi.trivial()) {
    tail = std::pow(static_cast<double>(n_max), 1 - s) / (s - 1) +
           std::pow(static_cast<double>(n_max), -s);
  } else {
    tail = static_cast<double>(P) * std::pow(static_cast<double>(n_max), -s);
  }
  return {value, tail + 8 * kEps * absacc};
}

long long class_number_bf(long long D) {
  if (D >= 0 || !arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("class_number_bf: D must be a negative fundamental discriminant");
  long long h = 0;
  for (long long a = 1; 3 * a * a <= -D; ++a) {
    for (long long b = -a; b <= a; ++b) {
      if (((b - D) & 1) != 0) continue;  // b = D (mod 2)
      long long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (a == c || -b == a)) continue;  // boundary forms need b >= 0
      ++h;
    }
  }
  return h;
}

double regulator_bf(long long D) {
  if (D <= 0 || !arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("regulator_bf: D must be a positive fundamental discriminant");
  const long long sq = isqrt(D);
  long long P0 = sq;
  if (((P0 ^ D) & 1) != 0) --P0;  // largest P0 <= sqrt(D) with P0 = D (mod 2)
  const long long Q0 = 2;
  // alpha = (P0 + sqrt(D))/2 is reduced, so its expansion is purely periodic
  // and the fundamental unit is the product of complete quotients over one
  // period.
  const double rt = std::sqrt(static_cast<double>(D));
  long long P = P0, Q = Q0;
  double reg = 0;
  do {
    reg += std::log((P + rt) / Q);
    long long a = (P + sq) / Q;
    long long Pn = a * Q - P;
    Q = (D - Pn * Pn) / Q;
    P = Pn;
  } while (P != P0 || Q != Q0);
  return reg;
}

ClassData class_data(long long D) {
  if (!arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("class_data: D must be a fundamental discriminant");
  ClassData cd;
  cd.D = D;
  if (D < 0) {
    cd.h = class_number_bf(D);
    cd.w = D == -3 ? 6 : (D == -4 ? 4 : 2);
    return cd;
  }
  cd.regulator = regulator_bf(D);
  // h = sqrt(D) L(1, chi_D) / (2 reg); the direct value pins the integer
  QuadraticCharacter chi(D);
  LValue lv = l_value_direct(chi, 1.0, 4'000'000 * D);
  double h_real = std::sqrt(static_cast<double>(D)) * lv.value / (2 * cd.regulator);
  cd.h = std::llround(h_real);
  if (cd.h < 1 || std::fabs(h_real - static_cast<double>(cd.h)) > 0.01)
    throw std::runtime_error("class_data: analytic class number did not settle on an integer");
  return cd;
}

LValue l_value_cnf(const ClassData& cd) {
  double v;
  if (cd.D < 0) {
    v = 2 * std::numbers::pi * static_cast<double>(cd.h) /
        (static_cast<double>(cd.w) * std::sqrt(static_cast<double>(-cd.D)));
  } else {
    v = 2 * static_cast<double>(cd.h) * cd.regulator / std::sqrt(static_cast<double>(cd.D));
  }
  return {v, 1e-12 * std::max(1.0, std::fabs(v))};
}

LValue l_modified(long long delta, double s, long long n_max) {
  auto d = arith::decompose_discriminant(delta);
  if (d.square)
    throw std::invalid_argument("l_modified: delta must not be a positive perfect square");
  return l_value_direct(QuadraticCharacter(delta), s, n_max);
}

EulerRatio dedekind_ratio_euler(const poly::CharPoly& f, double s, long long p_max) {
  if (f.degree() != 3) throw std::invalid_argument("dedekind_ratio_euler: cubic required");
  if (!(s > 1)) throw std::invalid_argument("dedekind_ratio_euler: s > 1 required");
  if (!poly::is_elliptic(f))
    throw std::invalid_argument("dedekind_ratio_euler: polynomial must be irreducible");
  if (!arith::is_perfect_square(poly::discriminant(f)))
    throw std::invalid_argument("dedekind_ratio_euler: discriminant must be a square (Galois)");

  EulerRatio out;
  for (long long p : primes_upto(p_max)) {
    auto t = poly::factor_type_mod_p(f, p);
    if (t.ramified) {
      out.ramified_skipped.push_back(p);
      continue;
    }
    double ps = std::pow(static_cast<double>(p), -s);
    if (t.degrees.size() == 3) {
      out.value /= (1 - ps) * (1 - ps);
    } else if (t.degrees.size() == 1 && t.degrees[0] == 3) {
      out.value /= 1 + ps + ps * ps;
    } else {
      throw std::logic_error("dedekind_ratio_euler: non-Galois splitting at unramified prime");
    }
  }
  return out;
}

long long default_series_length(long long period) {
  __int128 n = static_cast<__int128>(period) * 200'000'000;
  const __int128 cap = 4'000'000'000'000'000'000LL;
  return static_cast<long long>(n < cap ? n : cap);
}

}  // namespace ellterm::lfun
