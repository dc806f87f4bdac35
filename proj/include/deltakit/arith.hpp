#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace deltakit::arith {

struct PrimePower {
  std::int64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer, primes strictly increasing.
class Factorization {
 public:
  Factorization(std::int64_t n, std::vector<PrimePower> factors);

  std::int64_t n() const { return n_; }
  const std::vector<PrimePower>& factors() const& { return factors_; }
  std::vector<PrimePower> factors() && { return std::move(factors_); }

  bool isSquarefree() const;
  int mobius() const;
  std::int64_t eulerPhi() const;
  std::int64_t divisorCount() const;
  /// Number of primitive Dirichlet characters modulo n.
  std::int64_t phiStar() const;
  /// All positive divisors in increasing order.
  std::vector<std::int64_t> divisors() const;

 private:
  std::int64_t n_;
  std::vector<PrimePower> factors_;
};

std::uint64_t mulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powMod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool isPrime(std::uint64_t n);

/// Throws InvalidArgument for n <= 0.
Factorization factorize(std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);
/// gcd(|a|, |b|, c) with gcd(0, 0, c) = c. Requires c >= 1.
std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c);

/// Least nonnegative residue of a modulo m (m >= 1).
std::int64_t mod(std::int64_t a, std::int64_t m);

/// Inverse of a modulo m in [1, m-1]; throws NonInvertible when gcd(a, m) > 1.
std::int64_t inverseMod(std::int64_t a, std::int64_t m);

/// The unique x mod m1*m2 with x = r1 (mod m1), x = r2 (mod m2), coprime moduli.
std::int64_t crt(std::int64_t r1, std::int64_t m1, std::int64_t r2, std::int64_t m2);

std::int64_t phiStar(std::int64_t m);
int mobius(std::int64_t n);
std::int64_t eulerPhi(std::int64_t n);
std::int64_t divisorCount(std::int64_t n);

/// Least g that generates (Z / p^e Z)^* for an odd prime p.
std::int64_t leastPrimitiveRoot(std::int64_t p, int e);

/// Sieved values of mu, phi, tau and phi* on [1, N]. Immutable once built.
class MultiplicativeTable {
 public:
  explicit MultiplicativeTable(std::int64_t bound);

  std::int64_t bound() const { return bound_; }
  int mu(std::int64_t n) const { return mu_.at(n); }
  std::int64_t phi(std::int64_t n) const { return phi_.at(n); }
  std::int64_t tau(std::int64_t n) const { return tau_.at(n); }
  std::int64_t phiStar(std::int64_t n) const { return phi_star_.at(n); }

 private:
  std::int64_t bound_;
  std::vector<int> mu_;
  std::vector<std::int64_t> phi_;
  std::vector<std::int64_t> tau_;
  std::vector<std::int64_t> phi_star_;
};

}  // namespace deltakit::arith
