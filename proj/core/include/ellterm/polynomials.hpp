#pragma once

#include <vector>

namespace ellterm::poly {

// Monic characteristic polynomial X^n - a1 X^(n-1) + a2 X^(n-2) - ... + (-1)^n an,
// stored by its signed invariants a1..an. Requires n >= 2 and an != 0.
class CharPoly {
 public:
  explicit CharPoly(std::vector<long long> a);

  int degree() const { return static_cast<int>(a_.size()); }
  long long a(int k) const;  // a_k, 1 <= k <= n

  // Plain coefficients c[j] of X^j, ascending; c[n] = 1.
  std::vector<long long> coefficients() const;

  long long eval(long long x) const;  // throws std::overflow_error on overflow

 private:
  std::vector<long long> a_;
};

// disc(f) = (-1)^(n(n-1)/2) Res(f, f'), by an exact integer Sylvester
// determinant. Throws std::overflow_error if the value exceeds long long.
long long discriminant(const CharPoly& f);

// Resultant of two integer polynomials given by ascending coefficient vectors.
// Exposed for cross-checks; exact integer arithmetic throughout.
long long resultant(const std::vector<long long>& f, const std::vector<long long>& g);

// Elliptic regular semisimple test over Q. n = 2: disc not a perfect square.
// n = 3: no rational (hence integer) root. Other degrees are rejected.
bool is_elliptic(const CharPoly& f);

struct FactorizationType {
  std::vector<int> degrees;  // degrees of irreducible factors mod p, with multiplicity, ascending
  bool ramified = false;     // gcd(f, f') mod p nonconstant
};

// Distinct-degree factorization of f mod p (p prime, p <= 10^6). Degrees sum
// to deg f for every input.
FactorizationType factor_type_mod_p(const CharPoly& f, long long p);

// Number of roots of f mod p counted with multiplicity, by direct scan.
// Intended as an independent cross-check for small p.
int count_roots_mod_p(const CharPoly& f, long long p);

}  // namespace ellterm::poly
