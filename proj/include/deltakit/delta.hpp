#pragma once

#include <complex>
#include <cstdint>

#include "deltakit/bump.hpp"

namespace deltakit::kernels {

/// Bumps on [1/2, 1] with unit integral usable as the delta-method weight.
/// variant 0, 1, 2 are pairwise distinct.
SmoothBump deltaBump(int variant);

/// Detector of n = 0 built from additive characters of modulus q <= Q
/// (times P in the lowered variant). Immutable once calibrated.
class DeltaScheme {
 public:
  DeltaScheme(double Q, std::int64_t P, SmoothBump w);

  double Q() const { return Q_; }
  std::int64_t P() const { return P_; }
  const SmoothBump& bump() const { return w_; }
  bool calibrated() const { return rawAtZero_ > 0.0; }
  /// 1 / (raw value at n = 0).
  double cQ() const;
  double rawAtZero() const { return rawAtZero_; }

  /// Largest q contributing for an argument y of the weight:
  /// floor(Q max(1, 2|y|)).
  std::int64_t qLimit(double y) const;

  /// Sum without the calibration factor: the plain form when P = 1,
  /// the lowered form otherwise.
  double raw(std::int64_t n) const;

  /// Throws InvalidArgument when Q <= 1 and NumericalFailure when the raw
  /// value at 0 is below 1e-3 or c_Q misses [1 - 1/Q, 1 + 1/Q].
  friend DeltaScheme calibrate(DeltaScheme scheme);

 private:
  double Q_;
  std::int64_t P_;
  SmoothBump w_;
  double rawAtZero_ = 0.0;
};

DeltaScheme calibrate(DeltaScheme scheme);

/// g(x, y) = sum_{j >= 1} (x j)^{-1} (w(x j) - w(|y| / (x j))); zero
/// whenever x > max(1, 2|y|).
double hbWeight(double x, double y, const SmoothBump& w);
inline double hbWeight(double x, double y, const DeltaScheme& scheme) { return hbWeight(x, y, scheme.bump()); }

/// c_Q / Q^2 sum_{q} c_q(n) g(q/Q, n/Q^2). Requires P = 1 and a calibrated
/// scheme; exactly 1 at n = 0.
double deltaDecompose(std::int64_t n, const DeltaScheme& scheme);

/// c_Q / (P Q^2) sum_q sum*_{a mod q} sum_{b mod P} e(n (a + b q) / (q P))
/// g(q/Q, n / (P Q^2)). Requires P prime, equal to scheme.P(), calibrated.
double deltaDecomposeLowered(std::int64_t n, std::int64_t P, const DeltaScheme& scheme);

/// (1/P) sum_{b mod P} e(b n / P).
std::complex<double> congruenceAverage(std::int64_t n, std::int64_t P);

}  // namespace deltakit::kernels
