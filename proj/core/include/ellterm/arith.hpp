#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ellterm::arith {

// Kronecker symbol (D/n), fully extended: any D, any n (including n <= 0 and
// even n). (D/0) is 1 for D = +-1 and 0 otherwise.
int kronecker(long long D, long long n);

// delta = s^2 * fund with fund a fundamental discriminant, or fund = 1 when
// delta is a positive perfect square (flagged by square = true).
struct DiscriminantDecomposition {
  long long delta = 0;
  long long s = 1;
  long long fund = 1;
  bool square = false;  // delta is a positive perfect square; fund = 1
};

// Requires delta != 0 and delta = 0 or 1 (mod 4); throws std::invalid_argument
// otherwise.
DiscriminantDecomposition decompose_discriminant(long long delta);

// True for D in {1} union {fundamental field discriminants}: D = 1 (mod 4)
// squarefree, or D = 4m with m = 2,3 (mod 4) squarefree. D = 1 itself is
// excluded.
bool is_fundamental_discriminant(long long D);

bool is_perfect_square(long long n);

// Trial division; pairs (p, e) with p ascending. Requires n >= 1.
std::vector<std::pair<long long, int>> factorize(long long n);

// All positive divisors of n, ascending. Requires n >= 1.
std::vector<long long> divisors(long long n);

// p^k with overflow check; throws std::overflow_error if the result would not
// fit in long long.
long long checked_pow(long long p, int k);

}  // namespace ellterm::arith
