#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "ellterm/arith.hpp"

using namespace ellterm::arith;

namespace {

// Euler-criterion Legendre symbol, the independent oracle for odd primes.
int legendre(long long a, long long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : (r == p - 1 ? -1 : 0);
}

}  // namespace

TEST_CASE("kronecker matches the Euler criterion at odd primes") {
  const long long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                              43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (long long p : primes)
    for (long long a = -50; a <= 50; ++a) CHECK(kronecker(a, p) == legendre(a, p));
}

TEST_CASE("kronecker spot values and structure") {
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(5, 11) == 1);
  CHECK(kronecker(-7, 2) == 1);   // -7 = 1 mod 8
  CHECK(kronecker(17, 2) == 1);
  CHECK(kronecker(12, 2) == 0);
  CHECK(kronecker(0, 1) == 1);
  CHECK(kronecker(3, -1) == 1);
  CHECK(kronecker(-3, -1) == -1);

  SUBCASE("complete multiplicativity in the denominator") {
    for (long long d : {-4LL, 5LL, -8LL, 12LL, -20LL})
      for (long long m = 1; m <= 20; ++m)
        for (long long n = 1; n <= 20; ++n)
          CHECK(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
  }

  SUBCASE("periodicity mod |D| for discriminants") {
    for (long long d : {-4LL, 5LL, -8LL, 12LL, 45LL, -16LL})
      for (long long n = 1; n <= 3 * std::abs(d); ++n)
        CHECK(kronecker(d, n) == kronecker(d, n + std::abs(d)));
  }
}

TEST_CASE("discriminant decomposition splits off the fundamental part") {
  auto d1 = decompose_discriminant(-16);
  CHECK(d1.s == 2);
  CHECK(d1.fund == -4);
  CHECK_FALSE(d1.square);

  auto d2 = decompose_discriminant(45);
  CHECK(d2.s == 3);
  CHECK(d2.fund == 5);

  auto d3 = decompose_discriminant(8);
  CHECK(d3.s == 1);
  CHECK(d3.fund == 8);

  auto d4 = decompose_discriminant(12);
  CHECK(d4.s == 1);
  CHECK(d4.fund == 12);

  auto d5 = decompose_discriminant(-196);  // 7^2 * (-4)
  CHECK(d5.s == 7);
  CHECK(d5.fund == -4);

  auto sq = decompose_discriminant(16);
  CHECK(sq.square);
  CHECK(sq.fund == 1);
  CHECK(sq.s == 4);

  auto sq2 = decompose_discriminant(9);
  CHECK(sq2.square);
  CHECK(sq2.s == 3);

  SUBCASE("reconstruction and fundamentality over a range") {
    for (long long delta = -400; delta <= 400; ++delta) {
      long long r = ((delta % 4) + 4) % 4;
      if (delta == 0 || r == 2 || r == 3) continue;
      auto d = decompose_discriminant(delta);
      CHECK(d.s * d.s * d.fund == delta);
      if (d.square) {
        CHECK(d.fund == 1);
      } else {
        CHECK(is_fundamental_discriminant(d.fund));
      }
    }
  }

  CHECK_THROWS_AS(decompose_discriminant(0), std::invalid_argument);
  CHECK_THROWS_AS(decompose_discriminant(6), std::invalid_argument);
  CHECK_THROWS_AS(decompose_discriminant(-5), std::invalid_argument);
}

TEST_CASE("fundamental discriminant predicate") {
  const long long fundamental[] = {-3, -4, -7, -8, -11, 5, 8, 12, 13, 17, 21, -163};
  for (long long d : fundamental) CHECK(is_fundamental_discriminant(d));
  const long long not_fundamental[] = {0, 1, 2, 3, 4, -16, 9, 25, 45, -12, 48};
  for (long long d : not_fundamental) CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("perfect square detection at edges") {
  CHECK(is_perfect_square(0));
  CHECK(is_perfect_square(1));
  CHECK(is_perfect_square(4));
  CHECK(is_perfect_square(1LL << 62));
  CHECK_FALSE(is_perfect_square(-4));
  CHECK_FALSE(is_perfect_square(2));
  for (long long r = 8; r <= 2000; r += 7) {
    CHECK(is_perfect_square(r * r));
    CHECK_FALSE(is_perfect_square(r * r + 1));
    CHECK_FALSE(is_perfect_square(r * r - 1));
  }
  long long big = 3037000499LL;  // isqrt(2^63-1)
  CHECK(is_perfect_square(big * big));
}

TEST_CASE("factorization and divisors") {
  auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<long long, int>{2, 3});
  CHECK(f[1] == std::pair<long long, int>{3, 2});
  CHECK(f[2] == std::pair<long long, int>{5, 1});

  CHECK(divisors(12) == std::vector<long long>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<long long>{1});
  CHECK(divisors(97) == std::vector<long long>{1, 97});
}

TEST_CASE("checked power guards overflow") {
  CHECK(checked_pow(2, 62) == (1LL << 62));
  CHECK(checked_pow(10, 18) == 1000000000000000000LL);
  CHECK_THROWS_AS(checked_pow(10, 19), std::overflow_error);
  CHECK_THROWS_AS(checked_pow(2, 63), std::overflow_error);
}
