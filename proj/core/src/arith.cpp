#include "ellterm/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ellterm::arith {

namespace {

// (2/a) for odd a, via a mod 8; two's complement & 7 gives the residue for
// negative a as well.
inline int two_symbol(long long a) {
  long long r = a & 7;
  return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace

int kronecker(long long D, long long n) {
  long long a = D, b = n;
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (b & 1) == 0) return 0;
  int v = 0;
  while ((b & 1) == 0) {
    b >>= 1;
    ++v;
  }
  int k = (v & 1) ? two_symbol(a) : 1;
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  // b now positive odd; standard reciprocity loop (Cohen, Alg. 1.4.10).
  while (a != 0) {
    v = 0;
    while ((a & 1) == 0) {
      a >>= 1;
      ++v;
    }
    if (v & 1) k *= two_symbol(b);
    // flip iff a = b = 3 (mod 4); bitwise test is valid for negative a too
    if (a & b & 2) k = -k;
    long long r = a < 0 ? -a : a;
    a = b % r;
    b = r;
  }
  return b > 1 ? 0 : k;
}

bool is_perfect_square(long long n) {
  if (n < 0) return false;
  long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
  for (long long t = std::max<long long>(0, r - 2); t <= r + 2; ++t) {
    if (t * t == n) return true;
    if (t > 3037000498LL) break;  // t^2 would overflow past this
  }
  return false;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<std::pair<long long, int>> out;
  int e = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++e;
  }
  if (e) out.emplace_back(2, e);
  for (long long p = 3; p <= n / p; p += 2) {
    if (n % p) continue;
    e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long long> divisors(long long n) {
  auto fac = factorize(n);
  std::vector<long long> out{1};
  for (auto [p, e] : fac) {
    std::size_t base = out.size();
    long long pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiscriminantDecomposition decompose_discriminant(long long delta) {
  if (delta == 0) throw std::invalid_argument("decompose_discriminant: delta must be nonzero");
  long long r = ((delta % 4) + 4) % 4;
  if (r == 2 || r == 3)
    throw std::invalid_argument("decompose_discriminant: delta must be 0 or 1 (mod 4)");

  long long mag = delta < 0 ? -delta : delta;
  // squarefree kernel m and cofactor square root t: |delta| = t^2 * m
  long long m = 1, t = 1;
  for (auto [p, e] : factorize(mag)) {
    if (e & 1) m *= p;
    for (int i = 0; i < e / 2; ++i) t *= p;
  }
  long long signed_m = delta < 0 ? -m : m;

  DiscriminantDecomposition d;
  d.delta = delta;
  if (delta > 0 && m == 1) {
    d.s = t;
    d.fund = 1;
    d.square = true;
    return d;
  }
  if (((signed_m % 4) + 4) % 4 == 1) {
    d.fund = signed_m;
    d.s = t;
  } else {
    // delta = 0,1 (mod 4) and m = 2,3 (mod 4) force t even
    d.fund = 4 * signed_m;
    d.s = t / 2;
  }
  return d;
}

bool is_fundamental_discriminant(long long D) {
  if (D == 0 || D == 1) return false;
  long long r = ((D % 4) + 4) % 4;
  if (r == 2 || r == 3) return false;
  auto d = decompose_discriminant(D);
  return !d.square && d.s == 1;
}

long long checked_pow(long long p, int k) {
  if (p < 0 || k < 0) throw std::invalid_argument("checked_pow: negative input");
  long long r = 1;
  for (int i = 0; i < k; ++i) {
    if (p != 0 && r > std::numeric_limits<long long>::max() / p)
      throw std::overflow_error("checked_pow: overflow");
    r *= p;
  }
  return r;
}

}  // namespace ellterm::arith
