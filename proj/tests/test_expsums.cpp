#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "deltakit/arith.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/expsums.hpp"

using namespace deltakit;
using expsums::kloosterman;

namespace {

// Independent loop: own gcd test, inverse by search, angle via std::polar.
std::complex<double> directSum(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::complex<double> s = 0.0;
  for (std::int64_t x = 0; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    std::int64_t xbar = 0;
    while ((x * xbar) % c != 1 % c) ++xbar;
    const std::int64_t k = ((a * x + b * xbar) % c + c) % c;
    s += std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(c));
  }
  return s;
}

}  // namespace

TEST_CASE("kloosterman hand values") {
  CHECK(kloosterman(1, 1, 2).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kloosterman(1, 1, 3).value == doctest::Approx(-1.0).epsilon(1e-14));
  const auto v = kloosterman(1, 1, 3);
  REQUIRE(v.nearestInteger.has_value());
  CHECK(*v.nearestInteger == -1);
  CHECK(v.weilBound == doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK(kloosterman(5, 7, 1).value == 1.0);
}

TEST_CASE("ramanujan degeneration equals mobius") {
  for (std::int64_t c = 1; c <= 500; ++c) {
    REQUIRE(std::fabs(kloosterman(1, 0, c).value - arith::mobius(c)) < 1e-9);
    REQUIRE(expsums::ramanujanSum(c, 1) == arith::mobius(c));
  }
  for (std::int64_t c = 1; c <= 60; ++c) {
    for (std::int64_t n = -30; n <= 30; ++n) {
      REQUIRE(std::fabs(kloosterman(0, n, c).value - static_cast<double>(expsums::ramanujanSum(c, n))) < 1e-9);
    }
  }
}

TEST_CASE("weil bound, symmetry and realness on c <= 2000") {
  std::mt19937_64 rng(99);
  for (std::int64_t c = 1; c <= 2000; ++c) {
    const expsums::ModulusTables tables(c);
    std::uniform_int_distribution<std::int64_t> dist(-3 * c, 3 * c);
    for (int t = 0; t < 20; ++t) {
      const std::int64_t a = dist(rng);
      const std::int64_t b = dist(rng);
      const auto s = kloosterman(a, b, tables);
      REQUIRE(std::fabs(s.value) <= s.weilBound * (1 + 1e-12));
      REQUIRE(std::fabs(s.imag) <= 1e-9 * static_cast<double>(c));
      if (t < 3) REQUIRE(std::fabs(s.value - kloosterman(b, a, tables).value) < 1e-9);
    }
  }
}

TEST_CASE("direct enumeration matches") {
  std::mt19937_64 rng(5);
  for (std::int64_t c = 1; c <= 150; ++c) {
    std::uniform_int_distribution<std::int64_t> dist(-200, 200);
    const std::int64_t a = dist(rng);
    const std::int64_t b = dist(rng);
    const auto direct = directSum(a, b, c);
    REQUIRE(std::fabs(kloosterman(a, b, c).value - direct.real()) < 1e-9);
    REQUIRE(std::fabs(direct.imag()) < 1e-9);
  }
}

TEST_CASE("crt path agrees with brute force") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::int64_t> cdist(1, 5000);
  std::uniform_int_distribution<std::int64_t> adist(-10000, 10000);
  for (int t = 0; t < 1000; ++t) {
    const std::int64_t c = cdist(rng);
    const std::int64_t a = adist(rng);
    const std::int64_t b = adist(rng);
    const double brute = kloosterman(a, b, c).value;
    const double fast = kloosterman(a, b, c, expsums::KloostermanMethod::Crt).value;
    REQUIRE(std::fabs(brute - fast) < 1e-8);
  }
}

TEST_CASE("twisted multiplicativity") {
  const auto p = expsums::kloostermanTwistedMult(1, 1, 2, 3);
  CHECK(p.left == doctest::Approx(-1.0));
  CHECK(p.right == doctest::Approx(-1.0));
  const auto z = expsums::kloostermanTwistedMult(0, 0, 7, 9);
  CHECK(z.left == doctest::Approx(static_cast<double>(arith::eulerPhi(63))));
  CHECK(z.right == doctest::Approx(static_cast<double>(arith::eulerPhi(63))));
  CHECK_THROWS(expsums::kloostermanTwistedMult(1, 1, 4, 6));
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int64_t> cdist(1, 100);
  std::uniform_int_distribution<std::int64_t> adist(-500, 500);
  int done = 0;
  while (done < 200) {
    const std::int64_t c1 = cdist(rng);
    const std::int64_t c2 = cdist(rng);
    if (arith::gcd(c1, c2) != 1) continue;
    const auto t = expsums::kloostermanTwistedMult(adist(rng), adist(rng), c1, c2);
    REQUIRE(std::fabs(t.left - t.right) < 1e-8);
    ++done;
  }
}

TEST_CASE("classical and lowered families") {
  CHECK(expsums::oldFormSum(1, 1, 4, 4, 5, 3) == doctest::Approx(-1.0));
  CHECK(expsums::oldFormSum(1, 3, 2, 1, 5, 7) == doctest::Approx(kloosterman(3, 3, 7).value));
  CHECK(arith::inverseMod(5, 7) == 3);
  CHECK(expsums::newFormSum(1, 3, 2, 1, 5, 2) == doctest::Approx(kloosterman(3, 1, 10).value));
  CHECK(expsums::newFormSum(0, 3, 9, 2, 5, 4) == doctest::Approx(static_cast<double>(expsums::ramanujanSum(20, 7))));
  CHECK_THROWS_AS(expsums::oldFormSum(1, 1, 2, 1, 5, 10), Error);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t q = 1 + t % 40;
    const std::int64_t P = 7;
    if (arith::gcd(q, P) != 1) continue;
    const std::int64_t r = d(rng), M = 1 + t % 5, n = d(rng), m = d(rng);
    const double oldValue = expsums::oldFormSum(r, M, n, m, P, q);
    REQUIRE(std::fabs(oldValue) <= expsums::weilBound(r * M, n - m, q) + 1e-9);
    REQUIRE(std::fabs(expsums::newFormSum(r, M, n, m, P, q)) <= expsums::weilBound(r * M, n - m, q * P) + 1e-9);
  }
}

TEST_CASE("gamma recombination") {
  CHECK(expsums::gammaRecombine(1, 3) == std::vector<std::int64_t>{0, 1, 2});
  CHECK(expsums::gammaRecombine(2, 3) == std::vector<std::int64_t>{1, 3, 5});
  std::vector<std::int64_t> expected;
  for (std::int64_t g = 0; g < 20; ++g) {
    if (std::gcd(g, std::int64_t{4}) == 1) expected.push_back(g);
  }
  CHECK(expsums::gammaRecombine(4, 5) == expected);
  CHECK(expected.size() == 10);
  for (std::int64_t q = 1; q <= 30; ++q) {
    for (std::int64_t P : {2, 3, 5, 11}) {
      if (arith::gcd(q, P) != 1) {
        CHECK_THROWS_AS(expsums::gammaRecombine(q, P), Error);
        continue;
      }
      const auto g = expsums::gammaRecombine(q, P);
      REQUIRE(static_cast<std::int64_t>(g.size()) == arith::eulerPhi(q) * P);
      REQUIRE(std::set<std::int64_t>(g.begin(), g.end()).size() == g.size());
    }
  }
}
