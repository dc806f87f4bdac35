#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "deltakit/arith.hpp"
#include "deltakit/characters.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/expsums.hpp"
#include "deltakit/pipeline.hpp"

using namespace deltakit;
using namespace deltakit::pipeline;
using modforms::FormId;
using modforms::Newform;

namespace {

const Newform& form(FormId id) {
  static const Newform forms[] = {Newform::builtin(FormId::Delta_1_12, 2500), Newform::builtin(FormId::E8_2_8, 2500),
                                  Newform::builtin(FormId::E6_3_6, 2500), Newform::builtin(FormId::E4_5_4, 2500),
                                  Newform::builtin(FormId::E2_11_2, 2500)};
  return forms[static_cast<int>(id)];
}

ShiftedSumSpec makeSpec(FormId id, std::int64_t r, std::int64_t M, double X, double Y) {
  ShiftedSumSpec s;
  s.f1 = s.f2 = &form(id);
  s.r = r;
  s.M = M;
  s.X = X;
  s.Y = Y;
  return s;
}

}  // namespace

TEST_CASE("shifted sum against a reference loop") {
  const auto spec = makeSpec(FormId::Delta_1_12, 1, 3, 30, 30);
  const auto& f = form(FormId::Delta_1_12);
  const auto h = kernels::unitBlockBump();
  double reference = 0.0;
  for (std::int64_t n = 1; n <= 100; ++n) {
    const std::int64_t m = n + 3;
    const double weight = h(n / 30.0) * h(m / 30.0);
    if (weight == 0.0) continue;
    reference += modforms::lambda(f, n) * modforms::lambda(f, m) / std::sqrt(double(n) * double(m)) * weight;
  }
  CHECK(shiftedSumBrute(spec) == doctest::Approx(reference).epsilon(1e-13));
  const auto report = shiftedSumDelta(spec);
  CHECK(std::fabs(report.deltaValue - report.bruteValue) <= std::max(1e-6 * std::fabs(report.bruteValue), 1e-10));
  CHECK(report.S2 == 0.0);
  CHECK(report.T == 0.0);
  CHECK(report.S1 == doctest::Approx(report.deltaValue).epsilon(1e-12));
}

TEST_CASE("empty support") {
  const auto spec = makeSpec(FormId::Delta_1_12, 100, 3, 30, 30);
  CHECK(shiftedSumBrute(spec) == 0.0);
  const auto report = shiftedSumDelta(spec);
  CHECK(std::fabs(report.deltaValue) <= 1e-10);
}

TEST_CASE("relabeling symmetry") {
  auto a = makeSpec(FormId::Delta_1_12, 2, 3, 30, 36);
  a.F = {kernels::unitBlockBump(1.0), kernels::unitBlockBump(0.6)};
  auto b = makeSpec(FormId::Delta_1_12, -2, 3, 36, 30);
  b.F = {a.F.hy, a.F.hx};
  CHECK(shiftedSumBrute(a) == doctest::Approx(shiftedSumBrute(b)).epsilon(1e-13));
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(makeSpec(FormId::E2_11_2, 11, 2, 40, 40).validate(), InvalidArgument);
  CHECK_THROWS_AS(makeSpec(FormId::E2_11_2, 1, 4, 40, 40).validate(), InvalidArgument);
  CHECK_THROWS_AS(makeSpec(FormId::E2_11_2, 0, 2, 40, 40).validate(), InvalidArgument);
  CHECK_THROWS_AS(makeSpec(FormId::E2_11_2, 1, 22, 40, 40).validate(), InvalidArgument);
  auto mixed = makeSpec(FormId::E2_11_2, 1, 2, 40, 40);
  mixed.f2 = &form(FormId::E4_5_4);
  CHECK_THROWS_AS(mixed.validate(), InvalidArgument);
  const auto shortForm = Newform::builtin(FormId::E2_11_2, 50);
  auto uncovered = makeSpec(FormId::E2_11_2, 1, 2, 40, 40);
  uncovered.f1 = uncovered.f2 = &shortForm;
  CHECK_THROWS_AS(shiftedSumBrute(uncovered), InvalidArgument);
}

TEST_CASE("delta pipeline and strata on E2_11_2") {
  const auto report = shiftedSumDelta(makeSpec(FormId::E2_11_2, 1, 2, 40, 40));
  CHECK(report.bruteValue == doctest::Approx(0.0467090268755764).epsilon(1e-10));
  CHECK(report.identityResidual <= 1e-6 * std::fabs(report.bruteValue));
  CHECK(std::fabs(report.S1 + report.S2 + report.T - report.deltaValue) <= 1e-8 * std::fabs(report.deltaValue));
  CHECK(report.Q == doctest::Approx(qChoice(40, 40, 11)));
  CHECK(report.qMax == 5);
  CHECK(report.T == 0.0);
  CHECK(report.S2 != 0.0);
  CHECK(report.boundValue == doctest::Approx(theorem2Bound(makeSpec(FormId::E2_11_2, 1, 2, 40, 40))));
}

TEST_CASE("partition identity for P in {2, 3, 5, 11}") {
  const std::pair<FormId, std::int64_t> cases[] = {
      {FormId::E8_2_8, 3}, {FormId::E6_3_6, 2}, {FormId::E4_5_4, 3}, {FormId::E2_11_2, 5}};
  for (const auto& [id, M] : cases) {
    for (std::int64_t r : {-1, 1}) {
      const auto report = shiftedSumDelta(makeSpec(id, r, M, 40, 40));
      INFO(modforms::formName(id) << " r=" << r);
      CHECK(std::fabs(report.S1 + report.S2 + report.T - report.deltaValue) <=
            1e-8 * std::max(std::fabs(report.deltaValue), 1e-300));
      CHECK(report.identityResidual <= std::max(1e-6 * std::fabs(report.bruteValue), 1e-10));
    }
  }
}

TEST_CASE("empty T stratum when Q < P") {
  const auto report = shiftedSumDelta(makeSpec(FormId::E4_5_4, 1, 2, 10, 10));
  CHECK(report.Q < 5.0);
  CHECK(report.T == 0.0);
}

TEST_CASE("kloosterman collapse examples") {
  const auto s1 = kloostermanCollapse(Stratum::S1, 2, 1, 0, 1, 5, 3);
  CHECK(s1.closed == doctest::Approx(expsums::kloosterman(2, 1, 15).value));
  CHECK(std::abs(s1.direct - s1.closed) < 1e-8);
  const auto s2 = kloostermanCollapse(Stratum::S2, 2, 1, 0, 1, 5, 3);
  CHECK(s2.closed == doctest::Approx(expsums::kloosterman(2, arith::inverseMod(5, 3), 3).value));
  CHECK(std::abs(s2.direct - s2.closed) < 1e-8);
  const auto t = kloostermanCollapse(Stratum::T, 1, 1, 4, 4, 2, 1);
  CHECK(std::fabs(t.closed) < 1e-12);
  CHECK(std::abs(t.direct) < 1e-12);
  CHECK_THROWS_AS(kloostermanCollapse(Stratum::S1, 1, 1, 0, 1, 5, 10), NotCoprime);
}

TEST_CASE("kloosterman collapse on random tuples") {
  std::mt19937_64 rng(2024);
  const std::int64_t primes[] = {2, 3, 5, 7, 11};
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<std::int64_t> qd(1, 30), small(-40, 40), md(1, 6);
  for (auto variant : {Stratum::S1, Stratum::S2, Stratum::T}) {
    int done = 0;
    while (done < 100) {
      const std::int64_t P = primes[pick(rng)];
      const std::int64_t q = qd(rng);
      if (variant != Stratum::T && q % P == 0) continue;
      std::int64_t r = small(rng);
      if (r == 0) r = 1;
      const std::int64_t M = md(rng), n = small(rng) + 40, m = small(rng) + 40;
      const auto v = kloostermanCollapse(variant, r, M, n, m, P, q);
      double expected = 0.0;
      switch (variant) {
        case Stratum::S1: expected = expsums::kloosterman(r * M, m - n, P * q).value; break;
        case Stratum::S2:
          expected = expsums::kloosterman(r * M, q == 1 ? 0 : (m - n) * arith::inverseMod(P, q), q).value;
          break;
        case Stratum::T: expected = expsums::kloosterman(r * M, m - n, P * P * q).value; break;
      }
      REQUIRE(std::abs(v.direct - v.closed) < 1e-8);
      REQUIRE(std::fabs(v.closed - expected) < 1e-8);
      ++done;
    }
  }
}

TEST_CASE("qChoice") {
  CHECK(qChoice(2, 2, 1) == doctest::Approx(4.0));
  CHECK(qChoice(8, 2, 4) == doctest::Approx(4.0));
  // With this Q the weight's second argument never exceeds 1/2 on admissible triples.
  for (double X : {20.0, 40.0, 75.0}) {
    for (std::int64_t P : {1, 3, 11}) {
      const double Q = qChoice(X, X, P);
      for (std::int64_t M : {1, 2, 5}) {
        const auto rMax = static_cast<std::int64_t>((2 * X) / static_cast<double>(M));
        for (std::int64_t r = -rMax; r <= rMax; r += std::max<std::int64_t>(1, rMax / 7)) {
          for (double n = X / 2; n <= 2.5 * X; n += X / 9) {
            for (double m = X / 2; m <= 2.5 * X; m += X / 11) {
              REQUIRE(2.0 * std::fabs(n - m + static_cast<double>(r * M)) / (static_cast<double>(P) * Q * Q) <= 1.0);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("second bound") {
  auto spec = makeSpec(FormId::E2_11_2, 1, 2, 40, 40);
  const double Z = spec.F.Z(), Zx = spec.F.Zx(), Zy = spec.F.Zy();
  const double expected = Z * std::sqrt(Zx * Zy) * std::pow(std::max(Zx, Zy), 2) * std::pow(11.0, 0.75) *
                          std::pow(40.0, 0.75) / 40.0;
  CHECK(theorem2Bound(spec) == doctest::Approx(expected).epsilon(1e-13));
  const double before = theorem2Bound(spec);
  spec.X = spec.Y = 80;
  CHECK(theorem2Bound(spec) / before == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-13));
  spec.Y = 160;
  const double grownY = theorem2Bound(spec);
  spec.Y = 320;
  CHECK(theorem2Bound(spec) / grownY == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-13));
}

TEST_CASE("first bound") {
  for (std::int64_t M : {3, 8, 20}) {
    CHECK(theorem1Bound(1, M, double(M), 0.0, 0.0) == doctest::Approx(1.0 + std::pow(double(M), -0.25)));
  }
  const double a = theorem1Bound(1, 10, 10, 0.0, 0.0) - 1.0;
  const double b = theorem1Bound(1, 20, 20, 0.0, 0.0) - 1.0;
  CHECK(b / a == doctest::Approx(std::pow(2.0, -0.25)));
  const double p3 = theorem1Bound(3, 10, std::sqrt(300.0), 0.0, 0.0) - 1.0;
  const double p6 = theorem1Bound(6, 10, std::sqrt(600.0), 0.0, 0.0) - 1.0;
  CHECK(p6 / p3 == doctest::Approx(std::pow(2.0, 0.5 + 0.625)));
  CHECK_THROWS_AS(theorem1Bound(1, 10, 50, 0.0, 0.01), InvalidArgument);
  CHECK_THROWS_AS(theorem1Bound(1, 10, 5, 0.1, 0.01), InvalidArgument);
  CHECK_NOTHROW(theorem1Bound(1, 10, std::pow(100.0, 0.4), 0.1, 0.01));
}

TEST_CASE("second moment reference loops") {
  const auto& f = form(FormId::E2_11_2);
  const auto h = kernels::unitBlockBump();
  double single = 0.0;
  for (std::int64_t n = 1; n <= 50; ++n) single += modforms::lambda(f, n) / std::sqrt(double(n)) * h(n / 20.0);
  CHECK(secondMomentBrute(f, 1, 20, h) == doctest::Approx(single * single).epsilon(1e-13));

  const auto chars = characters::primitiveCharacters(5);
  REQUIRE(chars.size() == 3);
  double avg = 0.0;
  for (const auto& chi : chars) {
    std::complex<double> L = 0.0;
    for (std::int64_t n = 1; n <= 50; ++n) L += chi(n) * modforms::lambda(f, n) / std::sqrt(double(n)) * h(n / 20.0);
    avg += std::norm(L) / 3.0;
  }
  const double value = secondMomentBrute(f, 5, 20, h);
  CHECK(value == doctest::Approx(avg).epsilon(1e-12));
  CHECK(value >= 0.0);
  CHECK_THROWS_AS(secondMomentBrute(f, 4, 20, h), InvalidArgument);
  CHECK_THROWS_AS(secondMomentBrute(f, 22, 20, h), InvalidArgument);
}

TEST_CASE("gauss opening identity") {
  const auto h = kernels::unitBlockBump();
  for (auto id : {FormId::Delta_1_12, FormId::E2_11_2}) {
    for (std::int64_t M : {1, 3, 5, 15, 21}) {
      const auto sides = gaussOpenIdentity(form(id), M, 60, h);
      CHECK(std::fabs(sides.lhs - sides.rhs) <= 1e-8 * std::fabs(sides.lhs));
    }
  }
}

TEST_CASE("off-diagonal decomposition") {
  const auto h = kernels::unitBlockBump();
  const auto& delta = form(FormId::Delta_1_12);
  const auto small = offDiagonal(delta, 7, 2.0, h);
  CHECK(small.offDiagonal == 0.0);

  const auto rep = offDiagonal(delta, 3, 30, h);
  double diag = 0.0, off = 0.0;
  for (std::int64_t n = 16; n <= 74; ++n) {
    const double u = modforms::lambda(delta, n) / std::sqrt(double(n)) * h(n / 30.0);
    diag += u * u;
    for (std::int64_t m = 16; m <= 74; ++m) {
      if (m == n || (m - n) % 3 != 0) continue;
      off += u * modforms::lambda(delta, m) / std::sqrt(double(m)) * h(m / 30.0);
    }
  }
  CHECK(rep.diagonal == doctest::Approx(diag).epsilon(1e-13));
  CHECK(rep.diagonal >= 0.0);
  CHECK(rep.offDiagonal == doctest::Approx(off).epsilon(1e-11));
  CHECK(rep.rBound == 25);
  for (std::int64_t M : {3, 5, 15, 21}) {
    const auto r = offDiagonal(form(FormId::E2_11_2), M, 50, h);
    CHECK(std::fabs(r.allResidue - double(M) * (r.diagonal + r.offDiagonal)) <= 1e-8 * r.allResidue);
  }
}

TEST_CASE("voronoi examples") {
  const auto& delta = form(FormId::Delta_1_12);
  const double X = voronoiScale(1, 1);
  const auto [h, h2] = voronoiTestFunctions(X);
  const auto rep = voronoiVerify(delta, 1, 1, h, h2);
  CHECK(std::fabs(std::abs(rep.eta) - 1.0) <= 1e-6);
  CHECK(rep.residual <= 1e-5);
  CHECK_FALSE(rep.ramified);
  const auto doubled = voronoiVerify(delta, 1, 1, h.scaled(2.0), h2);
  CHECK(std::abs(doubled.eta - rep.eta) <= 1e-8);

  const auto& e11 = form(FormId::E2_11_2);
  const double X3 = voronoiScale(3, 11);
  const auto [g, g2] = voronoiTestFunctions(X3);
  const auto r3 = voronoiVerify(e11, 1, 3, g, g2);
  CHECK(std::fabs(std::abs(r3.eta) - 1.0) <= 1e-6);
  CHECK(r3.residual <= 1e-5);
  CHECK(r3.dualTerms > 0);
  CHECK_THROWS_AS(voronoiVerify(e11, 3, 3, g, g2), Error);
}

TEST_CASE("exponent arithmetic") {
  const auto b25 = exponentBudget(Rational(2, 5));
  CHECK(b25.delta == Rational(0));
  CHECK_FALSE(b25.subconvex);
  const auto b0 = exponentBudget(Rational(0));
  CHECK(b0.delta == Rational(1, 10));
  CHECK(b0.finalExponent == Rational(1, 5));
  CHECK(exponentBudget(Rational(2, 7)).delta == Rational(1, 40));
  CHECK(b0.classicalThreshold == Rational(2, 7));
  for (int num = 0; num <= 30; ++num) {
    const Rational eta(num, 50);
    const auto b = exponentBudget(eta);
    CHECK(b.delta == (Rational(2) - Rational(5) * eta) / (Rational(10) * (Rational(2) + eta)));
    CHECK(b.subconvex == (eta > Rational(0) && eta < Rational(2, 5)));
    CHECK(balancingDelta(eta) == b.delta);
    CHECK(b.blomerHarcosDisplayed == Rational(1, 4) - Rational(1) / (Rational(8) * (Rational(2) + eta)) -
                                         (Rational(1) - eta) / (Rational(4) * (Rational(2) + eta)));
  }
}

TEST_CASE("rational parsing") {
  CHECK(parseRational("2/5") == Rational(2, 5));
  CHECK(parseRational("4/10") == Rational(2, 5));
  CHECK(parseRational("-3") == Rational(-3));
  CHECK(parseRational(" 1/7 ") == Rational(1, 7));
  CHECK_THROWS_AS(parseRational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parseRational("abc"), InvalidArgument);
  CHECK_THROWS_AS(parseRational("1/2/3"), InvalidArgument);
  CHECK_THROWS_AS(parseRational("0.4"), InvalidArgument);
  CHECK(formatRational(Rational(1, 40)) == "1/40");
  CHECK(formatRational(Rational(0)) == "0");
  CHECK(formatRational(Rational(-3)) == "-3");
}
