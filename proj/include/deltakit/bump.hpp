#pragma once

namespace deltakit::kernels {

/// scale * exp(-sharpness / (t (1 - t))) with t = (x - lo) / (hi - lo),
/// zero outside (lo, hi).
class SmoothBump {
 public:
  SmoothBump(double lo, double hi, double sharpness = 1.0, double scale = 1.0);

  /// Amplitude chosen so the integral over R equals `integral`.
  static SmoothBump withIntegral(double lo, double hi, double sharpness, double integral);
  /// Amplitude chosen so the maximum (at the midpoint) equals `peak`.
  static SmoothBump withPeak(double lo, double hi, double sharpness, double peak = 1.0);

  double operator()(double x) const;
  double derivative(double x) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double sharpness() const { return sharpness_; }
  double scale() const { return scale_; }

  /// Integral over R by adaptive quadrature.
  double integral() const;
  double supNorm() const;
  /// sup |x w'(x)| / sup |w| on a fine grid; the Z_x-type derivative size.
  double derivativeScale() const;

  SmoothBump scaled(double factor) const;

 private:
  double lo_;
  double hi_;
  double sharpness_;
  double scale_;
};

/// F(x, y) = hx(x) hy(y), both factors supported in [1/2, 5/2].
struct ProductBump {
  SmoothBump hx;
  SmoothBump hy;

  double operator()(double x, double y) const { return hx(x) * hy(y); }
  /// sup |F|.
  double Z() const;
  double Zx() const;
  double Zy() const;
};

/// h on [1/2, 5/2] with unit peak: the dyadic-block test function.
SmoothBump unitBlockBump(double sharpness = 1.0);

}  // namespace deltakit::kernels
