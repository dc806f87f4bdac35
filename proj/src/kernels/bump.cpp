#include "deltakit/bump.hpp"

#include <algorithm>
#include <cmath>

#include "deltakit/errors.hpp"
#include "deltakit/quadrature.hpp"

namespace deltakit::kernels {

SmoothBump::SmoothBump(double lo, double hi, double sharpness, double scale)
    : lo_(lo), hi_(hi), sharpness_(sharpness), scale_(scale) {
  if (!(hi > lo)) throw InvalidArgument("SmoothBump: support must be a nonempty interval");
  if (!(sharpness > 0)) throw InvalidArgument("SmoothBump: sharpness must be positive");
}

SmoothBump SmoothBump::withIntegral(double lo, double hi, double sharpness, double integral) {
  const SmoothBump unit(lo, hi, sharpness, 1.0);
  return SmoothBump(lo, hi, sharpness, integral / unit.integral());
}

SmoothBump SmoothBump::withPeak(double lo, double hi, double sharpness, double peak) {
  return SmoothBump(lo, hi, sharpness, peak * std::exp(4.0 * sharpness));
}

double SmoothBump::operator()(double x) const {
  if (x <= lo_ || x >= hi_) return 0.0;
  const double t = (x - lo_) / (hi_ - lo_);
  return scale_ * std::exp(-sharpness_ / (t * (1.0 - t)));
}

double SmoothBump::derivative(double x) const {
  if (x <= lo_ || x >= hi_) return 0.0;
  const double t = (x - lo_) / (hi_ - lo_);
  const double u = t * (1.0 - t);
  return scale_ * std::exp(-sharpness_ / u) * sharpness_ * (1.0 - 2.0 * t) / (u * u) / (hi_ - lo_);
}

double SmoothBump::integral() const {
  quad::QuadOptions opt;
  opt.absTol = 0.0;
  opt.relTol = 1e-13;
  return quad::integrate([this](double x) { return (*this)(x); }, quad::uniformBreaks(lo_, hi_, 8), opt).value;
}

double SmoothBump::supNorm() const { return std::fabs(scale_) * std::exp(-4.0 * sharpness_); }

double SmoothBump::derivativeScale() const {
  constexpr int kGrid = 4000;
  double best = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    const double x = lo_ + (hi_ - lo_) * i / kGrid;
    best = std::max(best, std::fabs(x * derivative(x)));
  }
  return best / supNorm();
}

SmoothBump SmoothBump::scaled(double factor) const { return SmoothBump(lo_, hi_, sharpness_, scale_ * factor); }

double ProductBump::Z() const { return hx.supNorm() * hy.supNorm(); }
double ProductBump::Zx() const { return std::max(1.0, hx.derivativeScale()); }
double ProductBump::Zy() const { return std::max(1.0, hy.derivativeScale()); }

SmoothBump unitBlockBump(double sharpness) { return SmoothBump::withPeak(0.5, 2.5, sharpness); }

}  // namespace deltakit::kernels
