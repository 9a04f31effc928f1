#include "ellterm/polynomials.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "ellterm/arith.hpp"

namespace ellterm::poly {

namespace {

long long to_long_checked(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw std::overflow_error(what);
  return mpz_get_si(z.get_mpz_t());
}

// Bareiss fraction-free elimination; exact over the integers.
mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

mpz_class resultant_mpz(const std::vector<long long>& f, const std::vector<long long>& g) {
  const int n = static_cast<int>(f.size()) - 1;
  const int m = static_cast<int>(g.size()) - 1;
  if (n < 1 || m < 0) throw std::invalid_argument("resultant: degenerate degrees");
  if (f[n] == 0 || g[m] == 0) throw std::invalid_argument("resultant: zero leading coefficient");
  const int dim = n + m;
  std::vector<std::vector<mpz_class>> s(dim, std::vector<mpz_class>(dim, 0));
  // m rows of f, then n rows of g, coefficients descending
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) s[r][r + j] = static_cast<long>(f[n - j]);
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) s[m + r][r + j] = static_cast<long>(g[m - j]);
  return determinant(std::move(s));
}

// ---- dense polynomial arithmetic over F_p ----
// Coefficients ascending, always reduced into [0, p).

using Fp = std::vector<long long>;

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

long long powmod(long long b, long long e, long long p) {
  long long r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = static_cast<long long>(static_cast<__int128>(r) * b % p);
    b = static_cast<long long>(static_cast<__int128>(b) * b % p);
    e >>= 1;
  }
  return r;
}

long long invmod(long long a, long long p) { return powmod(a, p - 2, p); }

Fp mul(const Fp& a, const Fp& b, long long p) {
  if (a.empty() || b.empty()) return {};
  Fp c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<long long>((static_cast<__int128>(a[i]) * b[j] + c[i + j]) % p);
  }
  trim(c);
  return c;
}

// a mod b, b nonzero
Fp rem(Fp a, const Fp& b, long long p) {
  long long inv = invmod(b.back(), p);
  while (deg(a) >= deg(b)) {
    long long q = static_cast<long long>(static_cast<__int128>(a.back()) * inv % p);
    int shift = deg(a) - deg(b);
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto& slot = a[j + shift];
      slot = static_cast<long long>(((slot - static_cast<__int128>(q) * b[j]) % p + p) % p);
    }
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

Fp quot(Fp a, const Fp& b, long long p) {
  Fp q(std::max(0, deg(a) - deg(b) + 1), 0);
  long long inv = invmod(b.back(), p);
  while (deg(a) >= deg(b)) {
    long long c = static_cast<long long>(static_cast<__int128>(a.back()) * inv % p);
    int shift = deg(a) - deg(b);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto& slot = a[j + shift];
      slot = static_cast<long long>(((slot - static_cast<__int128>(c) * b[j]) % p + p) % p);
    }
    trim(a);
    if (a.empty()) break;
  }
  return q;
}

Fp make_monic(Fp a, long long p) {
  if (a.empty()) return a;
  long long inv = invmod(a.back(), p);
  for (auto& c : a) c = static_cast<long long>(static_cast<__int128>(c) * inv % p);
  return a;
}

Fp gcd(Fp a, Fp b, long long p) {
  while (!b.empty()) {
    Fp r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), p);
}

Fp derivative(const Fp& a, long long p) {
  Fp d;
  for (std::size_t i = 1; i < a.size(); ++i)
    d.push_back(static_cast<long long>(static_cast<__int128>(a[i]) * i % p));
  trim(d);
  return d;
}

Fp pow_mod_poly(Fp base, long long e, const Fp& h, long long p) {
  Fp r{1};
  base = rem(std::move(base), h, p);
  while (e > 0) {
    if (e & 1) r = rem(mul(r, base, p), h, p);
    base = rem(mul(base, base, p), h, p);
    e >>= 1;
  }
  return r;
}

// Distinct-degree factorization of squarefree monic h.
void ddf_squarefree(Fp h, long long p, std::vector<int>& out) {
  Fp x{0, 1};
  Fp w = x;
  int i = 1;
  while (2 * i <= deg(h)) {
    w = pow_mod_poly(std::move(w), p, h, p);  // w = X^(p^i) mod h
    Fp diff = w;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    trim(diff);
    Fp g = gcd(h, diff, p);
    if (deg(g) > 0) {
      for (int c = 0; c < deg(g) / i; ++c) out.push_back(i);
      h = quot(std::move(h), g, p);
      w = rem(std::move(w), h, p);
    }
    ++i;
  }
  if (deg(h) > 0) out.push_back(deg(h));
}

// Degrees with multiplicity for arbitrary monic h.
void factor_degrees(Fp h, long long p, std::vector<int>& out) {
  if (deg(h) <= 0) return;
  Fp d = derivative(h, p);
  if (d.empty()) {
    // h = w(X^p) = w(X)^p over F_p
    Fp w;
    for (std::size_t i = 0; i < h.size(); i += static_cast<std::size_t>(p)) w.push_back(h[i]);
    std::vector<int> sub;
    factor_degrees(std::move(w), p, sub);
    for (int c = 0; c < p; ++c) out.insert(out.end(), sub.begin(), sub.end());
    return;
  }
  Fp g = gcd(h, d, p);
  if (deg(g) == 0) {
    ddf_squarefree(std::move(h), p, out);
    return;
  }
  factor_degrees(quot(h, g, p), p, out);
  factor_degrees(std::move(g), p, out);
}

void require_prime(long long p) {
  if (p < 2 || p > 1000000) throw std::invalid_argument("factor_type_mod_p: p out of range");
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) throw std::invalid_argument("factor_type_mod_p: p not prime");
}

}  // namespace

CharPoly::CharPoly(std::vector<long long> a) : a_(std::move(a)) {
  if (a_.size() < 2) throw std::invalid_argument("CharPoly: degree must be >= 2");
  if (a_.back() == 0) throw std::invalid_argument("CharPoly: a_n must be nonzero");
}

long long CharPoly::a(int k) const {
  if (k < 1 || k > degree()) throw std::out_of_range("CharPoly::a");
  return a_[static_cast<std::size_t>(k) - 1];
}

std::vector<long long> CharPoly::coefficients() const {
  const int n = degree();
  std::vector<long long> c(static_cast<std::size_t>(n) + 1, 0);
  c[n] = 1;
  long long sign = -1;
  for (int k = 1; k <= n; ++k) {
    c[n - k] = sign * a_[k - 1];
    sign = -sign;
  }
  return c;
}

long long CharPoly::eval(long long x) const {
  auto c = coefficients();
  mpz_class acc = 0;
  for (int j = degree(); j >= 0; --j)
    acc = acc * static_cast<long>(x) + static_cast<long>(c[j]);
  return to_long_checked(acc, "CharPoly::eval: overflow");
}

long long resultant(const std::vector<long long>& f, const std::vector<long long>& g) {
  return to_long_checked(resultant_mpz(f, g), "resultant: overflow");
}

long long discriminant(const CharPoly& f) {
  const int n = f.degree();
  auto c = f.coefficients();
  std::vector<long long> d;
  for (int j = 1; j <= n; ++j) d.push_back(c[j] * j);
  mpz_class res = resultant_mpz(c, d);
  int sign = ((static_cast<long long>(n) * (n - 1) / 2) % 2 == 0) ? 1 : -1;
  return to_long_checked(sign * res, "discriminant: overflow");
}

bool is_elliptic(const CharPoly& f) {
  const int n = f.degree();
  if (n == 2) return !arith::is_perfect_square(discriminant(f));
  if (n == 3) {
    // rational root of a monic integer cubic is an integer dividing a_3
    for (long long d : arith::divisors(std::llabs(f.a(3)))) {
      if (f.eval(d) == 0 || f.eval(-d) == 0) return false;
    }
    return true;
  }
  throw std::invalid_argument("is_elliptic: only degrees 2 and 3 are supported");
}

FactorizationType factor_type_mod_p(const CharPoly& f, long long p) {
  require_prime(p);
  auto c = f.coefficients();
  Fp h(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) h[i] = ((c[i] % p) + p) % p;
  trim(h);  // leading coefficient is 1, never trimmed

  FactorizationType t;
  Fp d = derivative(h, p);
  Fp g = d.empty() ? h : gcd(h, d, p);
  t.ramified = deg(g) > 0;
  factor_degrees(std::move(h), p, t.degrees);
  std::sort(t.degrees.begin(), t.degrees.end());
  return t;
}

int count_roots_mod_p(const CharPoly& f, long long p) {
  require_prime(p);
  auto c = f.coefficients();
  Fp h(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) h[i] = ((c[i] % p) + p) % p;
  trim(h);
  int count = 0;
  for (long long r = 0; r < p && deg(h) >= 1; ++r) {
    for (;;) {
      long long val = 0;
      for (int i = deg(h); i >= 0; --i)
        val = static_cast<long long>((static_cast<__int128>(val) * r + h[i]) % p);
      if (val != 0 || deg(h) < 1) break;
      // synthetic division by X - r, exact since r is a root
      Fp q(static_cast<std::size_t>(deg(h)), 0);
      long long carry = 0;
      for (int i = deg(h); i >= 1; --i) {
        carry = static_cast<long long>((static_cast<__int128>(carry) * r + h[i]) % p);
        q[i - 1] = carry;
      }
      h = std::move(q);
      ++count;
    }
  }
  return count;
}

}  // namespace ellterm::poly
