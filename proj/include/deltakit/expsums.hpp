#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "deltakit/roots.hpp"

namespace deltakit::expsums {

struct KloostermanValue {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 1;
  double value = 0.0;
  /// Imaginary part of the computed sum; zero up to roundoff.
  double imag = 0.0;
  double weilBound = 0.0;
  /// Set when value lies within 1e-6 of an integer.
  std::optional<std::int64_t> nearestInteger;
};

enum class KloostermanMethod {
  Brute,  // O(c) enumeration of the reduced residues
  Crt,    // twisted multiplicativity down to prime powers, then brute force
};

/// Units, inverses and roots of unity for one modulus, reused across sums.
class ModulusTables {
 public:
  explicit ModulusTables(std::int64_t c);

  std::int64_t modulus() const { return c_; }
  const std::vector<std::int64_t>& units() const { return units_; }
  const std::vector<std::int64_t>& inverses() const { return inverses_; }
  const RootTable& roots() const { return roots_; }

 private:
  std::int64_t c_;
  std::vector<std::int64_t> units_;
  std::vector<std::int64_t> inverses_;
  RootTable roots_;
};

/// tau(c) sqrt(gcd(a, b, c)) sqrt(c).
double weilBound(std::int64_t a, std::int64_t b, std::int64_t c);

/// S(a, b; c) = sum over x mod c, gcd(x, c) = 1, of e((a x + b xbar) / c).
KloostermanValue kloosterman(std::int64_t a, std::int64_t b, std::int64_t c,
                             KloostermanMethod method = KloostermanMethod::Brute);
KloostermanValue kloosterman(std::int64_t a, std::int64_t b, const ModulusTables& tables);

/// Both sides of twisted multiplicativity for coprime c1, c2.
struct TwistedPair {
  double left;
  double right;
};
TwistedPair kloostermanTwistedMult(std::int64_t m, std::int64_t n, std::int64_t c1, std::int64_t c2);

/// S(rM, (n - m) Pbar; q), the sum produced by the classical delta method.
double oldFormSum(std::int64_t r, std::int64_t M, std::int64_t n, std::int64_t m, std::int64_t P,
                  std::int64_t q);

/// S(rM, n - m; qP), the sum produced by the conductor-lowered delta method.
double newFormSum(std::int64_t r, std::int64_t M, std::int64_t n, std::int64_t m, std::int64_t P,
                  std::int64_t q);

/// Residues a + b q mod qP over a mod q with gcd(a, q) = 1 and b mod P,
/// reduced mod qP and sorted. Requires gcd(q, P) = 1.
std::vector<std::int64_t> gammaRecombine(std::int64_t q, std::int64_t P);

/// Ramanujan sum c_q(n) = sum_{d | gcd(q, n)} d mu(q / d), exact.
std::int64_t ramanujanSum(std::int64_t q, std::int64_t n);

}  // namespace deltakit::expsums
