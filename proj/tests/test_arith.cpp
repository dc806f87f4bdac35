#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "deltakit/arith.hpp"
#include "deltakit/characters.hpp"
#include "deltakit/errors.hpp"

using namespace deltakit;
using arith::PrimePower;

TEST_CASE("factorize small cases") {
  CHECK(arith::factorize(1).factors().empty());
  CHECK(arith::factorize(12).factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(arith::factorize(9991).factors() == std::vector<PrimePower>{{97, 1}, {103, 1}});
  CHECK_THROWS_AS(arith::factorize(0), InvalidArgument);
  CHECK_THROWS_AS(arith::factorize(-5), InvalidArgument);
}

TEST_CASE("factorize round-trips products of two primes") {
  std::mt19937_64 rng(20241);
  std::uniform_int_distribution<std::int64_t> dist(2, 999'999);
  auto nextPrime = [&] {
    std::int64_t p = dist(rng);
    while (!arith::isPrime(static_cast<std::uint64_t>(p))) ++p;
    return p;
  };
  for (int i = 0; i < 1000; ++i) {
    std::int64_t p = nextPrime();
    std::int64_t q = nextPrime();
    if (p > q) std::swap(p, q);
    const auto f = arith::factorize(p * q);
    if (p == q) {
      REQUIRE(f.factors() == std::vector<PrimePower>{{p, 2}});
    } else {
      REQUIRE(f.factors() == std::vector<PrimePower>{{p, 1}, {q, 1}});
    }
  }
}

TEST_CASE("factorize handles large semiprimes") {
  const std::int64_t n = 1000000007LL * 998244353LL;
  CHECK(arith::factorize(n).factors() == std::vector<PrimePower>{{998244353, 1}, {1000000007, 1}});
  CHECK(arith::isPrime(9223372036854775783ULL));
  CHECK_FALSE(arith::isPrime(3215031751ULL));
}

TEST_CASE("inverseMod") {
  CHECK(arith::inverseMod(1, 7) == 1);
  CHECK(arith::inverseMod(2, 5) == 3);
  CHECK(arith::inverseMod(10, 97) == 68);
  CHECK(arith::inverseMod(-3, 7) == 2);
  CHECK_THROWS_AS(arith::inverseMod(6, 9), NonInvertible);
  CHECK_THROWS_AS(arith::inverseMod(1, 1), InvalidArgument);
  for (std::int64_t m = 2; m < 200; ++m) {
    for (std::int64_t a = 1; a < m; ++a) {
      if (arith::gcd(a, m) != 1) continue;
      REQUIRE(arith::mod(a * arith::inverseMod(a, m), m) == 1);
    }
  }
}

TEST_CASE("gcd3") {
  CHECK(arith::gcd3(0, 0, 12) == 12);
  CHECK(arith::gcd3(6, 10, 4) == 2);
  CHECK(arith::gcd3(35, 21, 14) == 7);
  CHECK(arith::gcd3(-35, 21, 14) == 7);
}

TEST_CASE("crt") {
  const std::int64_t x = arith::crt(2, 3, 3, 5);
  CHECK(x == 8);
  CHECK_THROWS_AS(arith::crt(1, 4, 1, 6), NotCoprime);
}

TEST_CASE("phiStar examples and formula") {
  CHECK(arith::phiStar(1) == 1);
  CHECK(arith::phiStar(5) == 3);
  CHECK(arith::phiStar(15) == 3);
  CHECK(arith::phiStar(2) == 0);
  for (std::int64_t M = 1; M <= 200; ++M) {
    std::int64_t viaDivisors = 0;
    for (std::int64_t d : arith::factorize(M).divisors()) viaDivisors += arith::mobius(d) * arith::eulerPhi(M / d);
    REQUIRE(arith::phiStar(M) == viaDivisors);
  }
}

TEST_CASE("phiStar counts primitive characters") {
  for (std::int64_t M = 1; M <= 200; ++M) {
    std::int64_t count = 0;
    for (const auto& chi : characters::enumerateCharacters(M)) count += chi.isPrimitive() ? 1 : 0;
    REQUIRE(count == arith::phiStar(M));
  }
}

TEST_CASE("divisor sums of mu and phi") {
  const arith::MultiplicativeTable table(10'000);
  CHECK(table.mu(1) == 1);
  CHECK(table.phi(1) == 1);
  CHECK(table.tau(1) == 1);
  CHECK(table.phiStar(1) == 1);
  for (std::int64_t n = 1; n <= 10'000; ++n) {
    std::int64_t muSum = 0;
    std::int64_t phiSum = 0;
    for (std::int64_t d : arith::factorize(n).divisors()) {
      muSum += table.mu(d);
      phiSum += table.phi(d);
    }
    REQUIRE(muSum == (n == 1 ? 1 : 0));
    REQUIRE(phiSum == n);
  }
}

TEST_CASE("sieve agrees with factorization") {
  const arith::MultiplicativeTable table(3000);
  for (std::int64_t n = 1; n <= 3000; ++n) {
    const auto f = arith::factorize(n);
    REQUIRE(table.mu(n) == f.mobius());
    REQUIRE(table.phi(n) == f.eulerPhi());
    REQUIRE(table.tau(n) == f.divisorCount());
    REQUIRE(table.phiStar(n) == f.phiStar());
  }
}

TEST_CASE("least primitive root") {
  CHECK(arith::leastPrimitiveRoot(3, 1) == 2);
  CHECK(arith::leastPrimitiveRoot(7, 1) == 3);
  CHECK(arith::leastPrimitiveRoot(23, 1) == 5);
  CHECK(arith::leastPrimitiveRoot(3, 2) == 2);
  CHECK(arith::leastPrimitiveRoot(5, 3) == 2);
  CHECK_THROWS_AS(arith::leastPrimitiveRoot(2, 3), InvalidArgument);
}
