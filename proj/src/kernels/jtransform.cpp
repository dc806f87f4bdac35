#include "deltakit/jtransform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "deltakit/bessel.hpp"
#include "deltakit/compensated.hpp"
#include "deltakit/delta.hpp"
#include "deltakit/errors.hpp"

namespace deltakit::kernels {
namespace {

void checkParams(const JTransformParams& p) {
  if (!(p.a > 0 && p.b > 0)) throw InvalidArgument("jTransform: a and b must be positive");
  if (p.cScale < 1 || p.q < 1 || p.P < 1) throw InvalidArgument("jTransform: c, q, P must be positive");
  if (!(p.Q > 1.0)) throw InvalidArgument("jTransform: Q must exceed 1");
  if (!(p.X >= 1.0 && p.Y >= 1.0)) throw InvalidArgument("jTransform: X and Y must be at least 1");
}

// Break points for [lo, hi] uniform in sqrt(t), one panel per half period
// of J(freq sqrt t) once the total phase exceeds 10.
std::vector<double> oscillationBreaks(double lo, double hi, double freq) {
  const double sLo = std::sqrt(lo);
  const double sHi = std::sqrt(hi);
  const double phase = freq * (sHi - sLo);
  if (freq * sHi <= 10.0) return quad::uniformBreaks(lo, hi, 4);
  const int panels = std::max(4, static_cast<int>(std::ceil(phase / std::numbers::pi)));
  std::vector<double> out;
  for (int i = 0; i <= panels; ++i) {
    const double s = sLo + (sHi - sLo) * i / panels;
    out.push_back(s * s);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

double gFirst(const JTransformParams& p) {
  return static_cast<double>(p.q * p.cScale) / p.Q;
}

double gSecond(const JTransformParams& p, double x, double y) {
  return (x - y + static_cast<double>(p.rM)) / (static_cast<double>(p.P) * p.Q * p.Q);
}

}  // namespace

JTransformResult jTransform(const JTransformParams& p, const ProductBump& F, const SmoothBump& w) {
  checkParams(p);
  const double Z = F.Z();
  if (Z == 0.0) return {};
  const double tol = 1e-9 * Z * std::sqrt(p.X * p.Y) * p.Q / static_cast<double>(p.q * p.cScale);
  const double fa = 4.0 * std::numbers::pi * p.a;
  const double fb = 4.0 * std::numbers::pi * p.b;
  const BesselEvaluator J(p.besselOrder);
  const double g1 = gFirst(p);
  const std::vector<double> xBreaks = oscillationBreaks(0.5 * p.X, 2.5 * p.X, fa);
  const std::vector<double> yBreaks = oscillationBreaks(0.5 * p.Y, 2.5 * p.Y, fb);

  quad::QuadOptions inner;
  inner.absTol = 0.25 * tol / (2.0 * p.X);
  quad::QuadOptions outer;
  outer.absTol = 0.5 * tol;

  auto outerIntegrand = [&](double x) -> quad::Sample {
    const double hx = F.hx(x / p.X);
    if (hx == 0.0) return {0.0, 0.0};
    const double jx = J(fa * std::sqrt(x));
    auto innerIntegrand = [&](double y) {
      const double hy = F.hy(y / p.Y);
      if (hy == 0.0) return 0.0;
      const double g = hbWeight(g1, gSecond(p, x, y), w);
      if (g == 0.0) return 0.0;
      return hy * g * J(fb * std::sqrt(y)) / std::sqrt(y);
    };
    const quad::QuadResult r = quad::integrate(innerIntegrand, yBreaks, inner);
    const double scale = hx * jx / std::sqrt(x);
    return {scale * r.value, std::fabs(scale) * r.error};
  };
  const quad::QuadResult r = quad::integrate(outerIntegrand, xBreaks, outer);
  return {r.value, r.error};
}

double jTransformMidpoint(const JTransformParams& p, const ProductBump& F, const SmoothBump& w, int cells) {
  checkParams(p);
  if (cells < 1) throw InvalidArgument("jTransformMidpoint: need at least one cell");
  const double fa = 4.0 * std::numbers::pi * p.a;
  const double fb = 4.0 * std::numbers::pi * p.b;
  const BesselEvaluator J(p.besselOrder);
  const double g1 = gFirst(p);
  const double hxStep = 2.0 * p.X / cells;
  const double hyStep = 2.0 * p.Y / cells;
  std::vector<double> xs(cells), ys(cells), fx(cells), fy(cells);
  for (int i = 0; i < cells; ++i) {
    xs[i] = 0.5 * p.X + (i + 0.5) * hxStep;
    ys[i] = 0.5 * p.Y + (i + 0.5) * hyStep;
    fx[i] = F.hx(xs[i] / p.X) * J(fa * std::sqrt(xs[i])) / std::sqrt(xs[i]);
    fy[i] = F.hy(ys[i] / p.Y) * J(fb * std::sqrt(ys[i])) / std::sqrt(ys[i]);
  }
  CompensatedSum total;
  for (int i = 0; i < cells; ++i) {
    if (fx[i] == 0.0) continue;
    CompensatedSum row;
    for (int j = 0; j < cells; ++j) {
      if (fy[j] == 0.0) continue;
      row += fy[j] * hbWeight(g1, gSecond(p, xs[i], ys[j]), w);
    }
    total += fx[i] * row.value();
  }
  return total.value() * hxStep * hyStep;
}

double jBoundParts(const JTransformParams& p, const ProductBump& F, int i, int j) {
  checkParams(p);
  const double qc = static_cast<double>(p.q * p.cScale);
  const double P = static_cast<double>(p.P);
  const double aX = p.a * std::sqrt(p.X);
  const double bY = p.b * std::sqrt(p.Y);
  const double base = F.Z() * std::sqrt(p.X * p.Y) * p.Q / qc / std::sqrt(1.0 + aX) / std::sqrt(1.0 + bY);
  const double fx = (F.Zx() + p.X / (qc * p.Q * P)) / aX;
  const double fy = (F.Zy() + p.Y / (qc * p.Q * P)) / bY;
  return base * std::pow(fx, i) * std::pow(fy, j);
}

double jBoundBest(const JTransformParams& p, const ProductBump& F) {
  double best = jBoundParts(p, F, 0, 0);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) best = std::min(best, jBoundParts(p, F, i, j));
  }
  return best;
}

double jBoundMixed(const JTransformParams& p, const ProductBump& F) {
  checkParams(p);
  const double qc = static_cast<double>(p.q * p.cScale);
  const double aX = p.a * std::sqrt(p.X);
  const double bY = p.b * std::sqrt(p.Y);
  return F.Z() / (p.a * p.b * std::sqrt(1.0 + aX) * std::sqrt(1.0 + bY)) * p.Q / qc *
         std::min(F.Zx() * bY, F.Zy() * aX);
}

std::pair<double, double> truncationRanges(std::int64_t q, double X, double Y, double Zx, double Zy, double Q,
                                           std::int64_t P, Stratum variant) {
  if (q < 1 || P < 1 || !(X > 0 && Y > 0 && Zx > 0 && Zy > 0 && Q > 0)) {
    throw InvalidArgument("truncationRanges: parameters must be positive");
  }
  const double qd = static_cast<double>(q);
  const double Pd = static_cast<double>(P);
  double lead = 0.0;
  double denom = 0.0;
  switch (variant) {
    case Stratum::S1:
      lead = Pd * Pd * qd * qd;
      denom = qd * Q * Pd;
      break;
    case Stratum::S2:
      lead = Pd * qd * qd;
      denom = qd * Q * Pd;
      break;
    case Stratum::T:
      lead = Pd * Pd * Pd * Pd * qd * qd;
      denom = qd * Q * Pd * Pd;
      break;
  }
  const double t1 = lead / X * std::pow(Zx + X / denom, 2);
  const double t2 = lead / Y * std::pow(Zy + Y / denom, 2);
  return {t1, t2};
}

}  // namespace deltakit::kernels
