#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "deltakit/arith.hpp"
#include "deltakit/compensated.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/expsums.hpp"
#include "deltakit/pipeline.hpp"
#include "deltakit/roots.hpp"

namespace deltakit::pipeline {
namespace {

struct Range {
  std::int64_t lo;
  std::int64_t hi;
};

// Integers strictly inside the support (X/2, 5X/2).
Range supportRange(double X) {
  return {static_cast<std::int64_t>(std::floor(0.5 * X)) + 1, static_cast<std::int64_t>(std::ceil(2.5 * X)) - 1};
}

void requireCoverage(const modforms::Newform& f, const Range& r) {
  if (r.hi > f.bound()) {
    throw InvalidArgument("coefficient table of " + f.name() + " ends at " + std::to_string(f.bound()) +
                          ", need " + std::to_string(r.hi));
  }
}

std::int64_t inverseOrZero(std::int64_t a, std::int64_t m) { return m == 1 ? 0 : arith::inverseMod(a, m); }

std::complex<double> rootOf(__int128 k, std::int64_t m) {
  auto r = static_cast<std::int64_t>(k % m);
  if (r < 0) r += m;
  return unitRoot(r, m);
}

}  // namespace

std::int64_t ShiftedSumSpec::P() const {
  if (f1 == nullptr) throw InvalidArgument("ShiftedSumSpec: missing first form");
  return f1->level();
}

void ShiftedSumSpec::validate() const {
  if (f1 == nullptr || f2 == nullptr) throw InvalidArgument("ShiftedSumSpec: both forms are required");
  if (f1->level() != f2->level()) throw InvalidArgument("ShiftedSumSpec: forms must share the level");
  if (r == 0) throw InvalidArgument("ShiftedSumSpec: r must be nonzero");
  const std::int64_t level = P();
  if (arith::gcd(r, level) != 1) throw InvalidArgument("ShiftedSumSpec: r must be coprime to the level");
  if (M < 1 || !arith::factorize(M).isSquarefree()) throw InvalidArgument("ShiftedSumSpec: M must be squarefree");
  if (arith::gcd(M, level) != 1) throw InvalidArgument("ShiftedSumSpec: M must be coprime to the level");
  if (!(X >= 1.0 && Y >= 1.0)) throw InvalidArgument("ShiftedSumSpec: X and Y must be at least 1");
  requireCoverage(*f1, supportRange(X));
  requireCoverage(*f2, supportRange(Y));
}

double qChoice(double X, double Y, std::int64_t P) {
  if (!(X >= 1.0 && Y >= 1.0) || P < 1) throw InvalidArgument("qChoice: need X, Y >= 1 and P >= 1");
  return std::sqrt(8.0 * std::max(X, Y) / static_cast<double>(P));
}

double shiftedSumBrute(const ShiftedSumSpec& spec) {
  spec.validate();
  const Range nr = supportRange(spec.X);
  const Range mr = supportRange(spec.Y);
  const std::int64_t shift = spec.r * spec.M;
  CompensatedSum sum;
  for (std::int64_t n = nr.lo; n <= nr.hi; ++n) {
    const std::int64_t m = n + shift;
    if (m < mr.lo || m > mr.hi) continue;
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    sum += modforms::lambda(*spec.f1, n) * modforms::lambda(*spec.f2, m) / std::sqrt(nd * md) *
           spec.F(nd / spec.X, md / spec.Y);
  }
  return sum.value();
}

SumReport shiftedSumDelta(const ShiftedSumSpec& spec) {
  spec.validate();
  const std::int64_t P = spec.P();
  const Range nr = supportRange(spec.X);
  const Range mr = supportRange(spec.Y);
  const std::int64_t shift = spec.r * spec.M;

  SumReport report;
  report.bruteValue = shiftedSumBrute(spec);
  report.boundValue = theorem2Bound(spec);
  report.Q = qChoice(spec.X, spec.Y, P);
  const kernels::DeltaScheme scheme =
      kernels::calibrate(kernels::DeltaScheme(report.Q, P, kernels::deltaBump(spec.deltaVariant)));
  report.cQ = scheme.cQ();

  // C(d): the weighted pair sum over n - m + rM = d, independent of q.
  std::vector<double> u, v;
  for (std::int64_t n = nr.lo; n <= nr.hi; ++n) {
    const double nd = static_cast<double>(n);
    u.push_back(modforms::lambda(*spec.f1, n) / std::sqrt(nd) * spec.F.hx(nd / spec.X));
  }
  for (std::int64_t m = mr.lo; m <= mr.hi; ++m) {
    const double md = static_cast<double>(m);
    v.push_back(modforms::lambda(*spec.f2, m) / std::sqrt(md) * spec.F.hy(md / spec.Y));
  }
  const std::int64_t dMin = nr.lo - mr.hi + shift;
  const std::int64_t dMax = nr.hi - mr.lo + shift;
  std::vector<double> pairSum;
  for (std::int64_t d = dMin; d <= dMax; ++d) {
    CompensatedSum s;
    for (std::int64_t n = nr.lo; n <= nr.hi; ++n) {
      const std::int64_t m = n + shift - d;
      if (m < mr.lo || m > mr.hi) continue;
      s += u[static_cast<std::size_t>(n - nr.lo)] * v[static_cast<std::size_t>(m - mr.lo)];
    }
    pairSum.push_back(s.value());
  }

  const double Q = report.Q;
  const double scale = static_cast<double>(P) * Q * Q;
  const double maxAbsD = static_cast<double>(std::max(std::llabs(dMin), std::llabs(dMax)));
  report.qMax = scheme.qLimit(maxAbsD / scale);
  CompensatedSum strata[3];
  for (std::int64_t q = 1; q <= report.qMax; ++q) {
    const std::int64_t modulus = q * P;
    const RootTable roots(modulus);
    // Per residue d mod qP, the gamma-sum restricted to each stratum.
    std::vector<double> charSum[3];
    for (auto& c : charSum) c.assign(static_cast<std::size_t>(modulus), 0.0);
    for (std::int64_t gamma = 0; gamma < modulus; ++gamma) {
      if (arith::gcd(gamma, q) != 1) continue;
      int stratum = 0;
      if (P > 1 && q % P == 0) {
        stratum = 2;
      } else if (P > 1 && gamma % P == 0) {
        stratum = 1;
      }
      for (std::int64_t res = 0; res < modulus; ++res) {
        charSum[stratum][static_cast<std::size_t>(res)] += roots(res * gamma).real();
      }
    }
    for (std::int64_t d = dMin; d <= dMax; ++d) {
      const double c = pairSum[static_cast<std::size_t>(d - dMin)];
      if (c == 0.0) continue;
      const double g = kernels::hbWeight(static_cast<double>(q) / Q, static_cast<double>(d) / scale, scheme);
      if (g == 0.0) continue;
      const auto res = static_cast<std::size_t>(arith::mod(d, modulus));
      for (int s = 0; s < 3; ++s) strata[s] += c * g * charSum[s][res];
    }
  }
  const double norm = scale * scheme.rawAtZero();
  report.S1 = strata[0].value() / norm;
  report.S2 = strata[1].value() / norm;
  report.T = strata[2].value() / norm;
  CompensatedSum total;
  for (auto& s : strata) total += s.value();
  report.deltaValue = total.value() / norm;

  report.identityResidual = std::fabs(report.bruteValue - report.deltaValue);
  report.partitionResidual = std::fabs(report.S1 + report.S2 + report.T - report.deltaValue);
  if (report.identityResidual > std::max(1e-6 * std::fabs(report.bruteValue), 1e-10)) {
    throw PipelineMismatch("shiftedSumDelta: delta method disagrees with brute force", report.bruteValue,
                           report.deltaValue);
  }
  if (report.partitionResidual > 1e-8 * std::max(std::fabs(report.deltaValue), 1e-10)) {
    throw PipelineMismatch("shiftedSumDelta: strata do not reconstruct the total", report.deltaValue,
                           report.S1 + report.S2 + report.T);
  }
  return report;
}

double theorem2Bound(const ShiftedSumSpec& spec) {
  if (!(spec.X >= 1.0 && spec.Y >= 1.0)) throw InvalidArgument("theorem2Bound: X and Y must be at least 1");
  const double Zx = spec.F.Zx();
  const double Zy = spec.F.Zy();
  const double P = static_cast<double>(spec.P());
  return spec.F.Z() * std::sqrt(Zx * Zy) * std::pow(std::max(Zx, Zy), 2) * std::pow(P, 0.75) *
         std::pow(std::max(spec.X, spec.Y), 0.75) / std::sqrt(spec.X * spec.Y);
}

CollapseValue kloostermanCollapse(Stratum variant, std::int64_t r, std::int64_t M, std::int64_t n, std::int64_t m,
                                  std::int64_t P, std::int64_t q) {
  if (P < 1 || q < 1 || M < 1) throw InvalidArgument("kloostermanCollapse: P, q, M must be positive");
  if (variant != Stratum::T && arith::gcd(q, P) != 1) {
    throw NotCoprime("kloostermanCollapse: S1 and S2 need gcd(q, P) = 1");
  }
  const std::int64_t rM = r * M;
  const std::int64_t diff = m - n;
  // gamma = a + b qFull, a a unit mod qFull, b mod P: the delta-method
  // parametrization, then filtered to the stratum.
  const std::int64_t qFull = variant == Stratum::T ? q * P : q;
  const std::int64_t modulus = qFull * P;
  CompensatedComplexSum direct;
  for (std::int64_t a = 0; a < qFull; ++a) {
    if (arith::gcd(a, qFull) != 1) continue;
    for (std::int64_t b = 0; b < P; ++b) {
      const std::int64_t gamma = a + b * qFull;
      switch (variant) {
        case Stratum::S1: {
          if (arith::gcd(gamma, P) != 1) continue;
          const std::int64_t inv = inverseOrZero(gamma, modulus);
          direct += rootOf(static_cast<__int128>(rM) * gamma + static_cast<__int128>(diff) * inv, modulus);
          break;
        }
        case Stratum::S2: {
          if (gamma % P != 0) continue;
          const std::int64_t inv = inverseOrZero(arith::mod(gamma, q), q);
          direct += rootOf(static_cast<__int128>(rM) * gamma, modulus) * rootOf(static_cast<__int128>(diff) * inv, q);
          break;
        }
        case Stratum::T: {
          const std::int64_t inv = inverseOrZero(gamma, modulus);
          direct += rootOf(static_cast<__int128>(rM) * gamma + static_cast<__int128>(diff) * inv, modulus);
          break;
        }
      }
    }
  }
  double closed = 0.0;
  switch (variant) {
    case Stratum::S1:
      closed = expsums::kloosterman(rM, diff, P * q).value;
      break;
    case Stratum::S2:
      closed = expsums::kloosterman(rM, diff * inverseOrZero(arith::mod(P, q), q), q).value;
      break;
    case Stratum::T:
      closed = expsums::kloosterman(rM, diff, P * P * q).value;
      break;
  }
  return {direct.value(), closed};
}

}  // namespace deltakit::pipeline
