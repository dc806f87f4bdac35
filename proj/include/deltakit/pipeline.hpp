#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltakit/bump.hpp"
#include "deltakit/delta.hpp"
#include "deltakit/jtransform.hpp"
#include "deltakit/modforms.hpp"

namespace deltakit::pipeline {

using kernels::ProductBump;
using kernels::SmoothBump;
using kernels::Stratum;
using Rational = boost::rational<std::int64_t>;

// ---------------------------------------------------------------------------
// Shifted convolution sums

/// Sum over n of lambda1(n) lambda2(n + rM) / sqrt(n (n + rM)) F(n/X, (n + rM)/Y).
struct ShiftedSumSpec {
  const modforms::Newform* f1 = nullptr;
  const modforms::Newform* f2 = nullptr;
  std::int64_t r = 1;
  std::int64_t M = 1;
  double X = 1.0;
  double Y = 1.0;
  ProductBump F{kernels::unitBlockBump(), kernels::unitBlockBump()};
  /// Which delta weight to use (see kernels::deltaBump).
  int deltaVariant = 0;

  std::int64_t P() const;
  /// Throws InvalidArgument on any violated precondition.
  void validate() const;
};

/// sqrt(8 max(X, Y) / P).
double qChoice(double X, double Y, std::int64_t P);

struct SumReport {
  double bruteValue = 0.0;
  double deltaValue = 0.0;
  double S1 = 0.0;
  double S2 = 0.0;
  double T = 0.0;
  double boundValue = 0.0;
  double Q = 0.0;
  double cQ = 0.0;
  std::int64_t qMax = 0;
  /// |brute - delta| and |S1 + S2 + T - delta|.
  double identityResidual = 0.0;
  double partitionResidual = 0.0;
};

double shiftedSumBrute(const ShiftedSumSpec& spec);
/// Runs the lowered delta method with the full gamma mod qP sum, split
/// into the three strata. Throws PipelineMismatch when brute force and
/// delta disagree beyond max(1e-6 |brute|, 1e-10), or when the strata miss
/// the total by more than 1e-8 relative.
SumReport shiftedSumDelta(const ShiftedSumSpec& spec);
inline SumReport splitS1S2T(const ShiftedSumSpec& spec) { return shiftedSumDelta(spec); }

/// Z (Zx Zy)^{1/2} max(Zx, Zy)^2 P^{3/4} max(X, Y)^{3/4} / (XY)^{1/2}.
double theorem2Bound(const ShiftedSumSpec& spec);

struct CollapseValue {
  std::complex<double> direct;
  double closed;
};

/// The character sum over one stratum's gamma with the dual phases, and
/// its Kloosterman closed form: S(rM, m-n; Pq), S(rM, (m-n) Pbar; q) or
/// S(rM, m-n; P^2 q). S1 and S2 need gcd(q, P) = 1 (NotCoprime otherwise).
CollapseValue kloostermanCollapse(Stratum variant, std::int64_t r, std::int64_t M, std::int64_t n,
                                  std::int64_t m, std::int64_t P, std::int64_t q);

// ---------------------------------------------------------------------------
// Second moment

/// Twisted partial sums use h(n / X) on n in [X/2, 5X/2].
double secondMomentBrute(const modforms::Newform& f, std::int64_t M, double X, const SmoothBump& h);

struct IdentitySides {
  double lhs;
  double rhs;
};
IdentitySides gaussOpenIdentity(const modforms::Newform& f, std::int64_t M, double X, const SmoothBump& h);

struct OffDiagonalReport {
  double diagonal = 0.0;
  double offDiagonal = 0.0;
  std::int64_t rBound = 0;
  /// sum over all b mod M of |sum_n lambda(n)/sqrt(n) e(nb/M) h(n/X)|^2,
  /// which must equal M (diagonal + offDiagonal).
  double allResidue = 0.0;
};
OffDiagonalReport offDiagonal(const modforms::Newform& f, std::int64_t M, double X, const SmoothBump& h);

/// Q^eps (1 + Q^{1/2}/M P^{5/8 + delta/4} / M^{1/4 - delta/2}) with Q = P M^2;
/// X must lie in [Q^{1/2 - delta}, Q^{1/2 + eps}].
double theorem1Bound(std::int64_t P, std::int64_t M, double X, double delta, double epsilon);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double predicted = 0.0;
  std::vector<std::pair<std::int64_t, double>> points;
};
/// Least-squares slope against log M of the log of the off-diagonal term's
/// root mean square over eight lengths X in [sqrt(P) M / 1.25, 1.25 sqrt(P) M],
/// compared to the bound's exponent -1/4 + delta/2.
SlopeFit offDiagonalSlope(const modforms::Newform& f, const std::vector<std::int64_t>& moduli, double delta,
                          const SmoothBump& h, int threads = 1);

// ---------------------------------------------------------------------------
// Voronoi summation

struct VoronoiReport {
  std::complex<double> eta;
  double residual = 0.0;
  std::complex<double> lhs;
  std::complex<double> rhs;
  std::complex<double> lhsSecond;
  std::complex<double> rhsSecond;
  std::int64_t dualTerms = 0;
  bool ramified = false;
};

/// Scale X at which both sides need a comparable number of coefficients.
double voronoiScale(std::int64_t q, std::int64_t P);
/// Two unrelated unit-peak test functions supported in [X/2, 5X/2].
std::pair<SmoothBump, SmoothBump> voronoiTestFunctions(double X);

/// Solves for eta with h, then measures the relative residual of the
/// identity with h2 and the same eta. `dual` defaults to f. Throws
/// Inconclusive when both sides are below 1e-8, InvalidArgument when the
/// coefficient table runs out before the dual sum converges.
VoronoiReport voronoiVerify(const modforms::Newform& f, std::int64_t a, std::int64_t q, const SmoothBump& h,
                            const SmoothBump& h2, const modforms::Newform* dual = nullptr);

// ---------------------------------------------------------------------------
// Exponents

struct ExponentBudget {
  Rational eta;
  Rational delta;
  /// Exponent of the conductor in the final bound: 1/4 - delta/2.
  Rational finalExponent;
  bool subconvex = false;
  Rational classicalThreshold{2, 7};
  /// As displayed: 1/4 - 1/(8(2+eta)) - (1-eta)/(4(2+eta)).
  Rational blomerHarcosDisplayed;
  /// The larger of the two terms of the underlying two-term estimate.
  Rational blomerHarcosTwoTerm;
};

ExponentBudget exponentBudget(const Rational& eta);
/// delta solving the balance between the second-moment bound and the
/// target Q^{1/4 - delta/2}, derived from the individual exponents.
Rational balancingDelta(const Rational& eta);
/// Parses "p/q" or an integer. Throws InvalidArgument.
Rational parseRational(const std::string& text);
std::string formatRational(const Rational& r);

}  // namespace deltakit::pipeline
