#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "deltakit/errors.hpp"

namespace deltakit::quad {

struct QuadOptions {
  double absTol = 1e-12;
  double relTol = 0.0;
  int maxDepth = 40;
  long maxEvaluations = 4'000'000;
};

struct QuadResult {
  double value = 0.0;
  /// Sum of the per-panel Kronrod-Gauss differences, floored at roundoff
  /// level, plus any error carried in from nested integrands.
  double error = 0.0;
  long evaluations = 0;
};

/// A sample of a nested integrand: the value and the error of producing it.
struct Sample {
  double value;
  double error;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (nonnegative half).
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline Sample asSample(double v) { return {v, 0.0}; }
inline Sample asSample(Sample s) { return s; }

struct Panel {
  double kronrod;
  double gauss;
  double absIntegral;
  double carried;
};

template <class F>
Panel evalPanel(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Sample fc = asSample(f(mid));
  double k = fc.value * kKronrod[7];
  double g = fc.value * kGauss[3];
  double absk = std::fabs(fc.value) * kKronrod[7];
  double carried = fc.error * kKronrod[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const Sample f1 = asSample(f(mid - dx));
    const Sample f2 = asSample(f(mid + dx));
    k += kKronrod[i] * (f1.value + f2.value);
    absk += kKronrod[i] * (std::fabs(f1.value) + std::fabs(f2.value));
    carried += kKronrod[i] * (f1.error + f2.error);
    if (i % 2 == 1) g += kGauss[i / 2] * (f1.value + f2.value);
  }
  return {k * half, g * half, absk * half, carried * half};
}

template <class F>
struct Adaptive {
  F& f;
  QuadOptions opt;
  double totalLength;
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool failed = false;

  void run(double a, double b, double tol, int depth, const Panel& p) {
    const double raw = std::fabs(p.kronrod - p.gauss);
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * p.absIntegral;
    const bool exhausted = depth >= opt.maxDepth || evaluations >= opt.maxEvaluations;
    if (raw <= tol || raw <= floor || exhausted) {
      if (raw > tol && raw > floor) failed = true;
      value += p.kronrod;
      error += std::max(raw, floor) + p.carried;
      return;
    }
    const double mid = 0.5 * (a + b);
    const Panel left = evalPanel(f, a, mid);
    const Panel right = evalPanel(f, mid, b);
    evaluations += 30;
    // Depth-first, left panel first: the summation order is fixed.
    run(a, mid, 0.5 * tol, depth + 1, left);
    run(mid, b, 0.5 * tol, depth + 1, right);
  }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) over the consecutive panels given by
/// `breaks` (at least two increasing points). The tolerance is shared among
/// panels in proportion to their length; refinement is depth-first and
/// left-first, so the result is bitwise reproducible. The integrand may
/// return double or Sample. Throws NumericalFailure when the depth cap is
/// reached (or the evaluation budget spent) without meeting the
/// tolerance.
template <class F>
QuadResult integrate(F&& f, const std::vector<double>& breaks, const QuadOptions& opt = {}) {
  if (breaks.size() < 2) throw InvalidArgument("integrate: need at least two break points");
  const double length = breaks.back() - breaks.front();
  detail::Adaptive<std::remove_reference_t<F>> state{f, opt, length};
  if (length == 0.0) return {};
  // First pass estimates the magnitude for the relative tolerance.
  std::vector<detail::Panel> first;
  double estimate = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    first.push_back(detail::evalPanel(f, breaks[i], breaks[i + 1]));
    estimate += first.back().kronrod;
    state.evaluations += 15;
  }
  const double tol = std::max(opt.absTol, opt.relTol * std::fabs(estimate));
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double share = tol * (breaks[i + 1] - breaks[i]) / length;
    state.run(breaks[i], breaks[i + 1], share, 0, first[i]);
  }
  if (state.failed) {
    throw NumericalFailure("integrate: refinement limit reached with error estimate " + std::to_string(state.error),
                           state.error);
  }
  return {state.value, state.error, state.evaluations};
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  return integrate(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

/// `panels` equal pieces of [a, b].
std::vector<double> uniformBreaks(double a, double b, int panels);

}  // namespace deltakit::quad
