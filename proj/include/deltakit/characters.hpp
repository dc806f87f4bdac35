#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace deltakit::characters {

/// Generator data and per-residue discrete logarithms for (Z/MZ)^*.
///
/// Each odd prime power p^e contributes its least primitive root; 4
/// contributes -1; 2^e with e >= 3 contributes -1 and 5. Generators are
/// lifted to residues mod M by CRT (congruent to 1 on the other factors).
class CharacterGroup {
 public:
  explicit CharacterGroup(std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  /// Lifted generators mod M and their orders, in enumeration order.
  const std::vector<std::int64_t>& generators() const { return generators_; }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  /// lcm of the generator orders; the common exponent denominator.
  std::int64_t exponent() const { return exponent_; }
  std::int64_t size() const { return size_; }
  bool isUnit(std::int64_t n) const;
  /// Discrete log of the unit n along generator i.
  std::int64_t log(std::int64_t n, std::size_t i) const;

 private:
  std::int64_t modulus_;
  std::int64_t exponent_ = 1;
  std::int64_t size_ = 1;
  std::vector<std::int64_t> generators_;
  std::vector<std::int64_t> orders_;
  // logs_[n * generators_.size() + i], or -1 for non-units.
  std::vector<std::int32_t> logs_;
};

/// A Dirichlet character, stored as exact exponents of e(1/L).
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::int64_t> indices);

  std::int64_t modulus() const { return group_->modulus(); }
  const std::vector<std::int64_t>& indices() const { return indices_; }
  /// Common denominator L of the stored exponents.
  std::int64_t denominator() const { return group_->exponent(); }
  /// t in [0, L) with chi(n) = e(t / L), or -1 when gcd(n, M) > 1.
  std::int64_t exponent(std::int64_t n) const;
  std::complex<double> operator()(std::int64_t n) const;

  std::int64_t conductor() const { return conductor_; }
  bool isPrimitive() const { return conductor_ == modulus(); }
  bool isPrincipal() const;
  /// Order of chi in the character group.
  std::int64_t order() const;

  DirichletCharacter conjugate() const;
  /// exponent(n) for n = 0 .. M-1.
  std::vector<std::int64_t> exponentTable() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.indices_ == b.indices_;
  }

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::int64_t> indices_;
  std::int64_t conductor_ = 1;
};

/// All phi(M) characters mod M; index 0 is principal, the first generator
/// index varies fastest.
std::vector<DirichletCharacter> enumerateCharacters(std::int64_t modulus);

/// Only the primitive characters mod M, in enumeration order.
std::vector<DirichletCharacter> primitiveCharacters(std::int64_t modulus);

/// Least d | M such that chi is trivial on units n = 1 (mod d).
std::int64_t conductor(const DirichletCharacter& chi);

/// sum_{b mod M} chi(b) e(b / M).
std::complex<double> gaussSum(const DirichletCharacter& chi);

/// sum_chi chi(n) conj(chi(m)) over all characters mod M; throws NotCoprime.
std::int64_t orthogonalitySum(std::int64_t modulus, std::int64_t n, std::int64_t m);

}  // namespace deltakit::characters
