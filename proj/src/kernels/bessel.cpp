#include "deltakit/bessel.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "deltakit/compensated.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/quadrature.hpp"

namespace deltakit::kernels {
namespace {

void checkArguments(int order, double x) {
  if (order < 0 || order > kMaxBesselOrder) throw InvalidArgument("besselJ: order must lie in [0, 20]");
  if (!(x >= 0.0)) throw InvalidArgument("besselJ: argument must be nonnegative");
}

struct AsymptoticSums {
  double p;
  double q;
  double lastTerm;
  bool converged;
};

// P and Q of the Hankel expansion, truncated at the smallest term.
AsymptoticSums asymptoticSums(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double p = 1.0;
  double q = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double next = term * (mu - (2.0 * k + 1) * (2.0 * k + 1)) / ((k + 1) * 8.0 * x);
    if (next == 0.0) return {p, q, 0.0, true};
    if (std::fabs(next) > std::fabs(term) && k > order) return {p, q, std::fabs(term), false};
    const int j = k + 1;
    const double sign = ((j / 2) % 2 == 0) ? 1.0 : -1.0;
    if (j % 2 == 0) {
      p += sign * next;
    } else {
      q += sign * next;
    }
    term = next;
    if (std::fabs(term) < 1e-17) return {p, q, std::fabs(term), true};
  }
  return {p, q, std::fabs(term), false};
}

double phase(int order, double x) { return x - (0.5 * order + 0.25) * std::numbers::pi; }

}  // namespace

double besselJSeries(int order, double x) {
  checkArguments(order, x);
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  double term = std::pow(half, order) / std::tgamma(order + 1.0);
  CompensatedSum sum;
  sum += term;
  double largest = std::fabs(term);
  for (int k = 0; k < 500; ++k) {
    term *= -half * half / ((k + 1.0) * (k + 1.0 + order));
    sum += term;
    largest = std::max(largest, std::fabs(term));
    if (k > half && std::fabs(term) < 1e-18 * largest) break;
  }
  return sum.value();
}

double besselJAsymptotic(int order, double x) {
  checkArguments(order, x);
  if (x == 0.0) throw InvalidArgument("besselJAsymptotic: argument must be positive");
  const AsymptoticSums s = asymptoticSums(order, x);
  const double w = phase(order, x);
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (s.p * std::cos(w) - s.q * std::sin(w));
}

double besselJIntegral(int order, double x) {
  checkArguments(order, x);
  if (x == 0.0) throw InvalidArgument("besselJIntegral: argument must be positive");
  const double p = order - 0.5;
  const double w = phase(order, x);
  // u = v^2 removes the u^{order-1/2} endpoint behaviour.
  auto logMagnitude = [&](double v) {
    const double z = v * v / (2.0 * x);
    return std::log(2.0) + 2.0 * order * std::log(v) - v * v + 0.5 * p * std::log1p(z * z);
  };
  auto integrand = [&](double v) {
    if (v == 0.0) return order == 0 ? 2.0 * std::cos(w) : 0.0;
    const double z = v * v / (2.0 * x);
    return std::exp(logMagnitude(v)) * std::cos(w + p * std::atan(z));
  };
  double peak = -1e300;
  double vPeak = 0.0;
  for (double v = 0.05; v < 20.0; v += 0.05) {
    const double lm = logMagnitude(v);
    if (lm > peak) {
      peak = lm;
      vPeak = v;
    }
  }
  double upper = std::max(vPeak, 1.0);
  while (logMagnitude(upper) > peak - 42.0) upper += 0.25;
  const double prefactor = std::sqrt(2.0 / (std::numbers::pi * x)) / std::tgamma(order + 0.5);
  // The result may sit near a zero of J, so the tolerance is absolute:
  // about 1e-14 on J itself.
  quad::QuadOptions opt;
  opt.absTol = 1e-14 / prefactor;
  const double integral = quad::integrate(integrand, quad::uniformBreaks(0.0, upper, 16), opt).value;
  return prefactor * integral;
}

double asymptoticThreshold(int order) {
  static const std::array<double, kMaxBesselOrder + 1> table = [] {
    std::array<double, kMaxBesselOrder + 1> out{};
    for (int n = 0; n <= kMaxBesselOrder; ++n) {
      double x = 10.0;
      while (!asymptoticSums(n, x).converged) x += 0.1;
      out[static_cast<std::size_t>(n)] = x;
    }
    return out;
  }();
  if (order < 0 || order > kMaxBesselOrder) throw InvalidArgument("asymptoticThreshold: order out of range");
  return table[static_cast<std::size_t>(order)];
}

double besselJ(int order, double x) {
  checkArguments(order, x);
  if (x <= kBesselCrossover) return besselJSeries(order, x);
  if (x >= asymptoticThreshold(order)) return besselJAsymptotic(order, x);
  return besselJIntegral(order, x);
}

BesselEvaluator::BesselEvaluator(int order, double crossover) : order_(order), crossover_(crossover) {
  checkArguments(order, 0.0);
  if (!(crossover > 0.0)) throw InvalidArgument("BesselEvaluator: crossover must be positive");
}

double BesselEvaluator::operator()(double x) const {
  checkArguments(order_, x);
  if (x <= crossover_) return besselJSeries(order_, x);
  if (x >= asymptoticThreshold(order_)) return besselJAsymptotic(order_, x);
  return besselJIntegral(order_, x);
}

}  // namespace deltakit::kernels
