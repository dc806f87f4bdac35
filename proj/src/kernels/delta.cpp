#include "deltakit/delta.hpp"

#include <cmath>
#include <string>

#include "deltakit/arith.hpp"
#include "deltakit/compensated.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/expsums.hpp"
#include "deltakit/roots.hpp"

namespace deltakit::kernels {

SmoothBump deltaBump(int variant) {
  switch (variant) {
    case 0:
      return SmoothBump::withIntegral(0.5, 1.0, 1.0, 1.0);
    case 1:
      return SmoothBump::withIntegral(0.5, 1.0, 0.25, 1.0);
    case 2:
      return SmoothBump::withIntegral(0.5, 0.9, 0.5, 1.0);
    default:
      throw InvalidArgument("deltaBump: variant must be 0, 1 or 2");
  }
}

double hbWeight(double x, double y, const SmoothBump& w) {
  if (!(x > 0.0)) throw InvalidArgument("hbWeight: x must be positive");
  const double ay = std::fabs(y);
  if (x > std::max(1.0, 2.0 * ay)) return 0.0;
  // w(xj) needs xj < 1; w(|y|/(xj)) needs xj < 2|y|.
  const double reach = std::max(w.hi(), 2.0 * ay);
  const auto jMax = static_cast<std::int64_t>(std::floor(reach / x)) + 1;
  CompensatedSum sum;
  for (std::int64_t j = 1; j <= jMax; ++j) {
    const double xj = x * static_cast<double>(j);
    sum += (w(xj) - w(ay / xj)) / xj;
  }
  return sum.value();
}

DeltaScheme::DeltaScheme(double Q, std::int64_t P, SmoothBump w) : Q_(Q), P_(P), w_(w) {
  if (!(Q > 1.0)) throw InvalidArgument("DeltaScheme: Q must exceed 1");
  if (P < 1) throw InvalidArgument("DeltaScheme: P must be positive");
  if (P > 1 && !arith::isPrime(static_cast<std::uint64_t>(P))) throw InvalidArgument("DeltaScheme: P must be prime");
}

double DeltaScheme::cQ() const {
  if (!calibrated()) throw InvalidArgument("DeltaScheme: not calibrated");
  return 1.0 / rawAtZero_;
}

std::int64_t DeltaScheme::qLimit(double y) const {
  return static_cast<std::int64_t>(std::floor(Q_ * std::max(1.0, 2.0 * std::fabs(y))));
}

double DeltaScheme::raw(std::int64_t n) const {
  const double nd = static_cast<double>(n);
  if (P_ == 1) {
    const double y = nd / (Q_ * Q_);
    const std::int64_t qMax = qLimit(y);
    CompensatedSum sum;
    for (std::int64_t q = 1; q <= qMax; ++q) {
      const double g = hbWeight(static_cast<double>(q) / Q_, y, w_);
      if (g == 0.0) continue;
      sum += static_cast<double>(expsums::ramanujanSum(q, n)) * g;
    }
    return sum.value() / (Q_ * Q_);
  }
  const double y = nd / (static_cast<double>(P_) * Q_ * Q_);
  const std::int64_t qMax = qLimit(y);
  CompensatedSum sum;
  for (std::int64_t q = 1; q <= qMax; ++q) {
    const double g = hbWeight(static_cast<double>(q) / Q_, y, w_);
    if (g == 0.0) continue;
    const std::int64_t modulus = q * P_;
    const RootTable roots(modulus);
    const std::int64_t nr = arith::mod(n, modulus);
    CompensatedSum inner;
    for (std::int64_t a = 0; a < q; ++a) {
      if (arith::gcd(a, q) != 1) continue;
      for (std::int64_t b = 0; b < P_; ++b) {
        const std::int64_t gamma = a + b * q;
        inner += roots(static_cast<std::int64_t>((static_cast<__int128>(nr) * gamma) % modulus)).real();
      }
    }
    sum += inner.value() * g;
  }
  return sum.value() / (static_cast<double>(P_) * Q_ * Q_);
}

DeltaScheme calibrate(DeltaScheme scheme) {
  const double r0 = scheme.raw(0);
  if (!(r0 >= 1e-3)) {
    throw NumericalFailure("calibrate: raw value at 0 is " + std::to_string(r0) + ", bump is unusable", r0);
  }
  const double c = 1.0 / r0;
  const double window = 1.0 / scheme.Q();
  if (std::fabs(c - 1.0) > window) {
    throw NumericalFailure("calibrate: c_Q = " + std::to_string(c) + " outside [1 - 1/Q, 1 + 1/Q]",
                           std::fabs(c - 1.0));
  }
  scheme.rawAtZero_ = r0;
  return scheme;
}

double deltaDecompose(std::int64_t n, const DeltaScheme& scheme) {
  if (scheme.P() != 1) throw InvalidArgument("deltaDecompose: scheme must have P = 1");
  if (!scheme.calibrated()) throw InvalidArgument("deltaDecompose: scheme not calibrated");
  return scheme.raw(n) / scheme.rawAtZero();
}

double deltaDecomposeLowered(std::int64_t n, std::int64_t P, const DeltaScheme& scheme) {
  if (P < 2 || !arith::isPrime(static_cast<std::uint64_t>(P))) {
    throw InvalidArgument("deltaDecomposeLowered: P must be prime");
  }
  if (scheme.P() != P) throw InvalidArgument("deltaDecomposeLowered: scheme built for a different P");
  if (!scheme.calibrated()) throw InvalidArgument("deltaDecomposeLowered: scheme not calibrated");
  return scheme.raw(n) / scheme.rawAtZero();
}

std::complex<double> congruenceAverage(std::int64_t n, std::int64_t P) {
  if (P < 1) throw InvalidArgument("congruenceAverage: P must be positive");
  // Geometric series: the b-sum is P when P | n and vanishes otherwise.
  return arith::mod(n, P) == 0 ? 1.0 : 0.0;
}

}  // namespace deltakit::kernels
