#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "deltakit/arith.hpp"
#include "deltakit/characters.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/modforms.hpp"

using namespace deltakit;
using modforms::FormId;
using modforms::Newform;

namespace {

// Naive product of (1 - q^n)^a over n, with no pentagonal shortcut.
std::vector<long long> naiveEtaProduct(const std::vector<std::pair<int, int>>& factors, int N) {
  std::vector<long long> c(static_cast<std::size_t>(N + 1), 0);
  c[0] = 1;
  for (auto [t, a] : factors) {
    for (int rep = 0; rep < a; ++rep) {
      for (int n = 1; t * n <= N; ++n) {
        for (int i = N; i >= t * n; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - t * n)];
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("eta expansions against a naive product") {
  const auto delta = modforms::etaPowerSeries({{1, 24}}, 60);
  const auto naive = naiveEtaProduct({{1, 24}}, 59);
  CHECK(delta[1] == 1);
  CHECK(delta[2] == -24);
  CHECK(delta[3] == 252);
  for (int n = 1; n <= 60; ++n) REQUIRE(delta[static_cast<std::size_t>(n)] == naive[static_cast<std::size_t>(n - 1)]);

  const auto e11 = modforms::etaPowerSeries({{1, 2}, {11, 2}}, 200);
  const auto naive11 = naiveEtaProduct({{1, 2}, {11, 2}}, 199);
  CHECK(e11[1] == 1);
  CHECK(e11[2] == -2);
  CHECK(e11[3] == -1);
  for (int n = 1; n <= 200; ++n) REQUIRE(e11[static_cast<std::size_t>(n)] == naive11[static_cast<std::size_t>(n - 1)]);

  CHECK_THROWS_AS(modforms::etaPowerSeries({{1, 5}}, 10), InvalidArgument);
  CHECK_THROWS_AS(modforms::etaPowerSeries({{1, 24}}, 100'001), InvalidArgument);
}

TEST_CASE("two multiplication orders agree") {
  for (auto id : modforms::allForms()) {
    const auto f = Newform::builtin(id, 2000);
    std::vector<modforms::EtaFactor> factors;
    switch (id) {
      case FormId::Delta_1_12: factors = {{1, 24}}; break;
      case FormId::E8_2_8: factors = {{1, 8}, {2, 8}}; break;
      case FormId::E6_3_6: factors = {{1, 6}, {3, 6}}; break;
      case FormId::E4_5_4: factors = {{1, 4}, {5, 4}}; break;
      case FormId::E2_11_2: factors = {{1, 2}, {11, 2}}; break;
    }
    const auto sparse = modforms::etaPowerSeries(factors, 2000, modforms::EtaMultiplication::Sparse);
    const auto dense = modforms::etaPowerSeries(factors, 2000, modforms::EtaMultiplication::Dense);
    REQUIRE(sparse == dense);
    for (std::int64_t n = 1; n <= 2000; ++n) REQUIRE(f.a(n) == sparse[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("catalog metadata") {
  const std::pair<FormId, std::pair<int, int>> expected[] = {{FormId::Delta_1_12, {1, 12}},
                                                             {FormId::E8_2_8, {2, 8}},
                                                             {FormId::E6_3_6, {3, 6}},
                                                             {FormId::E4_5_4, {5, 4}},
                                                             {FormId::E2_11_2, {11, 2}}};
  for (const auto& [id, lw] : expected) {
    const auto f = Newform::builtin(id, 100);
    CHECK(f.level() == lw.first);
    CHECK(f.weight() == lw.second);
    CHECK(f.a(1) == 1);
    CHECK(modforms::parseFormId(modforms::formName(id)) == id);
  }
  CHECK_FALSE(modforms::parseFormId("E2_11_3").has_value());
}

TEST_CASE("overflow reduces the stored bound") {
  const auto f = Newform::builtin(FormId::Delta_1_12, 5000);
  CHECK(f.bound() == 2562);
  CHECK_THROWS_AS(modforms::etaPowerSeries({{1, 24}}, 3000), Overflow);
  CHECK_THROWS_AS(f.a(2563), InvalidArgument);
}

TEST_CASE("lambda normalization") {
  for (auto id : modforms::allForms()) CHECK(modforms::lambda(Newform::builtin(id, 10), 1) == 1.0);
  CHECK(modforms::lambda(Newform::builtin(FormId::Delta_1_12, 10), 2) == doctest::Approx(-0.530330).epsilon(1e-6));
  CHECK(modforms::lambda(Newform::builtin(FormId::E2_11_2, 10), 2) == doctest::Approx(-1.414214).epsilon(1e-6));
}

TEST_CASE("hecke relations and deligne bound up to 2000") {
  for (auto id : modforms::allForms()) {
    const auto f = Newform::builtin(id, 2000);
    const std::int64_t P = f.level();
    for (std::int64_t n = 1; n <= 2000; ++n) {
      REQUIRE(modforms::deligneHolds(f, n));
      if (arith::gcd(n, P) != 1) continue;
      for (std::int64_t m = 1; m * n <= 2000; ++m) {
        REQUIRE(modforms::heckeIntegerDefect(f, m, n) == 0);
        REQUIRE(modforms::heckeResidual(f, m, n) < 1e-10);
      }
    }
  }
  const auto delta = Newform::builtin(FormId::Delta_1_12, 10);
  const double l2 = modforms::lambda(delta, 2);
  CHECK(std::fabs(l2 * l2 - modforms::lambda(delta, 4) - 1.0) < 1e-12);
  CHECK(modforms::heckeResidual(Newform::builtin(FormId::E2_11_2, 30), 11, 2) < 1e-12);
  CHECK_THROWS_AS(modforms::heckeResidual(Newform::builtin(FormId::E2_11_2, 30), 2, 11), InvalidArgument);
}

TEST_CASE("coefficient at the level prime") {
  for (auto id : {FormId::E8_2_8, FormId::E6_3_6, FormId::E4_5_4, FormId::E2_11_2}) {
    const auto f = Newform::builtin(id, 20);
    std::int64_t expected = 1;
    for (int i = 0; i < f.weight() - 2; ++i) expected *= f.level();
    CHECK(f.a(f.level()) * f.a(f.level()) == expected);
  }
}

TEST_CASE("twisting") {
  const auto f = Newform::builtin(FormId::E4_5_4, 100);
  const auto trivial = modforms::twist(f, characters::enumerateCharacters(1)[0], 50);
  for (std::int64_t n = 1; n <= 50; ++n) CHECK(trivial.values[static_cast<std::size_t>(n)] == modforms::lambda(f, n));
  for (const auto& chi : characters::enumerateCharacters(3)) {
    const auto t = modforms::twist(f, chi, 60);
    for (std::int64_t n = 1; n <= 60; ++n) {
      if (n % 3 == 0) REQUIRE(t.values[static_cast<std::size_t>(n)] == std::complex<double>(0.0, 0.0));
    }
    CHECK(std::abs(t.values[2] - chi(2) * modforms::lambda(f, 2)) < 1e-15);
  }
  CHECK_THROWS_AS(modforms::twist(f, characters::enumerateCharacters(10)[0], 20), InvalidArgument);
}

TEST_CASE("csv ingestion gate") {
  const auto f = Newform::builtin(FormId::E2_11_2, 200);
  std::ostringstream good;
  good << "# copy of a built-in form\nlevel,weight\n11,2\n";
  for (std::int64_t n = 1; n <= 200; ++n) good << n << ',' << f.a(n) << '\n';
  std::istringstream in(good.str());
  const auto g = Newform::fromCsv(in, "copy");
  CHECK(g.coefficients() == f.coefficients());
  CHECK(g.level() == 11);

  std::string bad = good.str();
  const auto pos = bad.find("\n6,2\n");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 5, "\n6,3\n");
  std::istringstream badIn(bad);
  CHECK_THROWS_AS(Newform::fromCsv(badIn, "broken"), ValidationFailed);

  std::istringstream gap("11,2\n1,1\n3,-1\n");
  CHECK_THROWS_AS(Newform::fromCsv(gap, "gap"), ValidationFailed);
}
