#pragma once

#include <cstdint>
#include <utility>

#include "deltakit/bump.hpp"
#include "deltakit/quadrature.hpp"

namespace deltakit::kernels {

struct JTransformParams {
  double a = 1.0;
  double b = 1.0;
  std::int64_t cScale = 1;
  std::int64_t q = 1;
  double Q = 2.0;
  std::int64_t P = 1;
  std::int64_t rM = 1;
  double X = 1.0;
  double Y = 1.0;
  /// k - 1 for a weight k form.
  int besselOrder = 1;
};

struct JTransformResult {
  double value = 0.0;
  double error = 0.0;
};

/// Double integral over [X/2, 5X/2] x [Y/2, 5Y/2] of
///   (xy)^{-1/2} F(x/X, y/Y) g(q c/Q, (x - y + rM)/(P Q^2)) J(4 pi a sqrt x) J(4 pi b sqrt y)
/// by nested adaptive Gauss-Kronrod. Absolute tolerance
/// 1e-9 Z sqrt(XY) Q / (q c); throws NumericalFailure past the depth cap.
JTransformResult jTransform(const JTransformParams& p, const ProductBump& F, const SmoothBump& w);

/// Midpoint rule with cells x cells points; the quadrature-free cross-check.
double jTransformMidpoint(const JTransformParams& p, const ProductBump& F, const SmoothBump& w, int cells);

/// The first bound with implied constant 1, for integration-by-parts
/// counts i (in x) and j (in y).
double jBoundParts(const JTransformParams& p, const ProductBump& F, int i, int j);
/// min over 0 <= i, j <= 3 of jBoundParts.
double jBoundBest(const JTransformParams& p, const ProductBump& F);
/// The second bound with implied constant 1 and epsilon = 0.
double jBoundMixed(const JTransformParams& p, const ProductBump& F);

enum class Stratum { S1, S2, T };

/// Dual-sum lengths (n-range, m-range) past which the transform is
/// negligible, per stratum.
std::pair<double, double> truncationRanges(std::int64_t q, double X, double Y, double Zx, double Zy, double Q,
                                           std::int64_t P, Stratum variant);

}  // namespace deltakit::kernels
