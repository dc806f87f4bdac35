#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "deltakit/arith.hpp"
#include "deltakit/bessel.hpp"
#include "deltakit/compensated.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/pipeline.hpp"
#include "deltakit/quadrature.hpp"
#include "deltakit/roots.hpp"

namespace deltakit::pipeline {
namespace {

// Total phase, in radians, the dual kernel must sweep across the support
// before the transform of a unit-sharpness bump falls below 1e-15.
constexpr double kDecayPhase = 700.0;
constexpr int kQuietRun = 20;
constexpr double kQuietLevel = 1e-13;

double dualIntegral(const SmoothBump& h, int order, double freq, double absTol) {
  const double sLo = std::sqrt(h.lo());
  const double sHi = std::sqrt(h.hi());
  const int panels = std::max(4, static_cast<int>(std::ceil(freq * (sHi - sLo) / std::numbers::pi)));
  std::vector<double> breaks;
  for (int i = 0; i <= panels; ++i) {
    const double s = sLo + (sHi - sLo) * i / panels;
    breaks.push_back(s * s);
  }
  breaks.front() = h.lo();
  breaks.back() = h.hi();
  quad::QuadOptions opt;
  opt.absTol = absTol;
  return quad::integrate([&](double y) { return h(y) * kernels::besselJ(order, freq * std::sqrt(y)); }, breaks, opt)
      .value;
}

struct Sides {
  std::complex<double> lhs;
  std::complex<double> rhs;
  std::int64_t dualTerms;
};

Sides bothSides(const modforms::Newform& f, const modforms::Newform& dual, std::int64_t a, std::int64_t q,
                std::int64_t P2, const SmoothBump& h) {
  const auto hiN = static_cast<std::int64_t>(std::ceil(h.hi())) - 1;
  const auto loN = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(h.lo())) + 1);
  if (hiN > f.bound()) {
    throw InvalidArgument("voronoiVerify: coefficient table of " + f.name() + " ends at " +
                          std::to_string(f.bound()) + ", need " + std::to_string(hiN));
  }
  const RootTable roots(q);
  CompensatedComplexSum lhs;
  for (std::int64_t n = loN; n <= hiN; ++n) {
    lhs += modforms::lambda(f, n) * h(static_cast<double>(n)) * roots(arith::mod(n * a, q));
  }

  const double sqrtP2 = std::sqrt(static_cast<double>(P2));
  const double c = 4.0 * std::numbers::pi / (static_cast<double>(q) * sqrtP2);
  const std::int64_t dualPhase = q == 1 ? 0 : arith::inverseMod(arith::mod(a * P2, q), q);
  const int order = dual.weight() - 1;
  const double absTol = 1e-14 * h.integral();
  CompensatedComplexSum rhs;
  double largest = 0.0;
  int quiet = 0;
  std::int64_t n = 1;
  for (;; ++n) {
    if (n > dual.bound()) {
      throw InvalidArgument("voronoiVerify: dual sum of " + dual.name() + " not converged by n = " +
                            std::to_string(dual.bound()));
    }
    const double I = dualIntegral(h, order, c * std::sqrt(static_cast<double>(n)), absTol);
    const double term = modforms::lambda(dual, n) * I;
    rhs += term * roots(arith::mod(-n * dualPhase, q));
    largest = std::max(largest, std::fabs(I));
    // Integrals below the quadrature tolerance are indistinguishable from 0.
    quiet = std::fabs(I) < std::max(kQuietLevel * largest, 4.0 * absTol) ? quiet + 1 : 0;
    if (quiet >= kQuietRun) break;
  }
  return {lhs.value(), rhs.value() * (2.0 * std::numbers::pi / (static_cast<double>(q) * sqrtP2)), n};
}

}  // namespace

double voronoiScale(std::int64_t q, std::int64_t P) {
  if (q < 1 || P < 1) throw InvalidArgument("voronoiScale: q and P must be positive");
  const double P2 = static_cast<double>(P / arith::gcd(P, q));
  const double c = 4.0 * std::numbers::pi / (static_cast<double>(q) * std::sqrt(P2));
  const double spread = std::sqrt(2.5) - std::sqrt(0.5);
  return std::ceil(kDecayPhase / (spread * c * std::sqrt(2.5)));
}

std::pair<SmoothBump, SmoothBump> voronoiTestFunctions(double X) {
  return {SmoothBump::withPeak(0.5 * X, 2.5 * X, 1.0), SmoothBump::withPeak(0.6 * X, 2.4 * X, 1.2)};
}

VoronoiReport voronoiVerify(const modforms::Newform& f, std::int64_t a, std::int64_t q, const SmoothBump& h,
                            const SmoothBump& h2, const modforms::Newform* dual) {
  if (q < 1) throw InvalidArgument("voronoiVerify: q must be positive");
  if (arith::gcd(a, q) != 1) throw NotCoprime("voronoiVerify: gcd(a, q) must be 1");
  if (!(h.lo() > 0.0 && h2.lo() > 0.0)) throw InvalidArgument("voronoiVerify: test functions must live in (0, inf)");
  const modforms::Newform& g = dual != nullptr ? *dual : f;
  if (g.level() != f.level() || g.weight() != f.weight()) {
    throw InvalidArgument("voronoiVerify: dual form must share level and weight");
  }
  const std::int64_t P = f.level();
  const std::int64_t P2 = P / arith::gcd(P, q);

  VoronoiReport report;
  report.ramified = P > 1 && q % P == 0;
  const Sides first = bothSides(f, g, a, q, P2, h);
  report.lhs = first.lhs;
  report.rhs = first.rhs;
  report.dualTerms = first.dualTerms;
  if (std::abs(first.rhs) <= 1e-8) {
    throw Inconclusive("voronoiVerify: dual side below 1e-8; choose a different test function");
  }
  report.eta = first.lhs / first.rhs;
  const Sides second = bothSides(f, g, a, q, P2, h2);
  report.lhsSecond = second.lhs;
  report.rhsSecond = second.rhs;
  report.dualTerms = std::max(report.dualTerms, second.dualTerms);
  if (std::abs(second.lhs) <= 1e-8 && std::abs(second.rhs) <= 1e-8) {
    throw Inconclusive("voronoiVerify: both sides below 1e-8 for the second test function");
  }
  report.residual = std::abs(second.lhs - report.eta * second.rhs) / std::max(std::abs(second.lhs), 1e-12);
  return report;
}

}  // namespace deltakit::pipeline
