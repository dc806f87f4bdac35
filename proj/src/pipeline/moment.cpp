#include <cmath>
#include <string>
#include <vector>

#include "deltakit/arith.hpp"
#include "deltakit/characters.hpp"
#include "deltakit/compensated.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/parallel.hpp"
#include "deltakit/pipeline.hpp"
#include "deltakit/roots.hpp"

namespace deltakit::pipeline {
namespace {

struct Weighted {
  std::int64_t first;
  std::vector<double> values;  // lambda(n) / sqrt(n) h(n / X)
};

void checkMoment(const modforms::Newform& f, std::int64_t M, double X) {
  if (M < 1) throw InvalidArgument("second moment: M must be positive");
  if (!arith::factorize(M).isSquarefree()) throw InvalidArgument("second moment: M must be squarefree");
  if (arith::gcd(M, f.level()) != 1) throw InvalidArgument("second moment: M must be coprime to the level");
  if (!(X > 0.0)) throw InvalidArgument("second moment: X must be positive");
}

Weighted weighted(const modforms::Newform& f, double X, const SmoothBump& h) {
  const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(X * h.lo())) + 1);
  const auto hi = static_cast<std::int64_t>(std::ceil(X * h.hi())) - 1;
  if (hi > f.bound()) {
    throw InvalidArgument("second moment: coefficient table of " + f.name() + " ends at " +
                          std::to_string(f.bound()) + ", need " + std::to_string(hi));
  }
  Weighted w{lo, {}};
  for (std::int64_t n = lo; n <= hi; ++n) {
    w.values.push_back(modforms::lambda(f, n) / std::sqrt(static_cast<double>(n)) * h(static_cast<double>(n) / X));
  }
  return w;
}

// A(b) = sum_n lambda(n)/sqrt(n) e(nb/M) h(n/X) for b mod M.
std::vector<std::complex<double>> additiveTwists(const Weighted& w, std::int64_t M) {
  const RootTable roots(M);
  std::vector<std::complex<double>> out;
  for (std::int64_t b = 0; b < M; ++b) {
    CompensatedComplexSum s;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
      const std::int64_t n = w.first + static_cast<std::int64_t>(i);
      s += w.values[i] * roots(arith::mod(n * b, M));
    }
    out.push_back(s.value());
  }
  return out;
}

std::vector<characters::DirichletCharacter> primitiveOrThrow(std::int64_t M) {
  auto chars = characters::primitiveCharacters(M);
  if (chars.empty()) throw InvalidArgument("second moment: no primitive characters modulo " + std::to_string(M));
  return chars;
}

}  // namespace

double secondMomentBrute(const modforms::Newform& f, std::int64_t M, double X, const SmoothBump& h) {
  checkMoment(f, M, X);
  const Weighted w = weighted(f, X, h);
  const auto chars = primitiveOrThrow(M);
  CompensatedSum total;
  for (const auto& chi : chars) {
    CompensatedComplexSum L;
    for (std::size_t i = 0; i < w.values.size(); ++i) L += w.values[i] * chi(w.first + static_cast<std::int64_t>(i));
    total += std::norm(L.value());
  }
  return total.value() / static_cast<double>(chars.size());
}

IdentitySides gaussOpenIdentity(const modforms::Newform& f, std::int64_t M, double X, const SmoothBump& h) {
  checkMoment(f, M, X);
  const double lhs = secondMomentBrute(f, M, X, h);
  const auto A = additiveTwists(weighted(f, X, h), M);
  const auto chars = primitiveOrThrow(M);
  CompensatedSum total;
  for (const auto& chi : chars) {
    CompensatedComplexSum s;
    for (std::int64_t b = 0; b < M; ++b) s += std::conj(chi(b)) * A[static_cast<std::size_t>(b)];
    total += std::norm(s.value());
  }
  return {lhs, total.value() / (static_cast<double>(M) * static_cast<double>(chars.size()))};
}

OffDiagonalReport offDiagonal(const modforms::Newform& f, std::int64_t M, double X, const SmoothBump& h) {
  checkMoment(f, M, X);
  const Weighted w = weighted(f, X, h);
  OffDiagonalReport report;
  report.rBound = static_cast<std::int64_t>(std::ceil(5.0 * X / (2.0 * static_cast<double>(M))));
  const auto size = static_cast<std::int64_t>(w.values.size());
  CompensatedSum diag;
  for (double v : w.values) diag += v * v;
  report.diagonal = diag.value();
  CompensatedSum off;
  for (std::int64_t r = -report.rBound; r <= report.rBound; ++r) {
    if (r == 0) continue;
    for (std::int64_t i = 0; i < size; ++i) {
      const std::int64_t j = i + r * M;
      if (j < 0 || j >= size) continue;
      off += w.values[static_cast<std::size_t>(i)] * w.values[static_cast<std::size_t>(j)];
    }
  }
  report.offDiagonal = off.value();
  CompensatedSum all;
  for (const auto& a : additiveTwists(w, M)) all += std::norm(a);
  report.allResidue = all.value();
  return report;
}

double theorem1Bound(std::int64_t P, std::int64_t M, double X, double delta, double epsilon) {
  if (P < 1 || M < 1 || !(X > 0) || delta < 0 || epsilon < 0) {
    throw InvalidArgument("theorem1Bound: arguments must be positive");
  }
  const double cond = static_cast<double>(P) * static_cast<double>(M) * static_cast<double>(M);
  const double lower = std::pow(cond, 0.5 - delta);
  const double upper = std::pow(cond, 0.5 + epsilon);
  constexpr double kSlack = 1e-12;
  if (X < lower * (1 - kSlack) || X > upper * (1 + kSlack)) {
    throw InvalidArgument("theorem1Bound: X outside [Q^(1/2 - delta), Q^(1/2 + eps)]");
  }
  const double Md = static_cast<double>(M);
  const double second =
      std::sqrt(cond) / Md * std::pow(static_cast<double>(P), 0.625 + delta / 4) / std::pow(Md, 0.25 - delta / 2);
  return std::pow(cond, epsilon) * (1.0 + second);
}

SlopeFit offDiagonalSlope(const modforms::Newform& f, const std::vector<std::int64_t>& moduli, double delta,
                          const SmoothBump& h, int threads) {
  if (moduli.size() < 2) throw InvalidArgument("offDiagonalSlope: need at least two moduli");
  const double rootP = std::sqrt(static_cast<double>(f.level()));
  constexpr int kLengths = 8;
  std::vector<double> values(moduli.size());
  parallelFor(moduli.size(), threads, [&](std::size_t i) {
    const double base = rootP * static_cast<double>(moduli[i]);
    CompensatedSum squares;
    for (int k = 0; k < kLengths; ++k) {
      const double t = (k - (kLengths - 1) / 2.0) / ((kLengths - 1) / 2.0);
      const double off = offDiagonal(f, moduli[i], base * std::pow(1.25, t), h).offDiagonal;
      squares += off * off;
    }
    values[i] = std::sqrt(squares.value() / kLengths);
  });
  SlopeFit fit;
  fit.predicted = -0.25 + delta / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    fit.points.emplace_back(moduli[i], values[i]);
    const double x = std::log(static_cast<double>(moduli[i]));
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(moduli.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace deltakit::pipeline
