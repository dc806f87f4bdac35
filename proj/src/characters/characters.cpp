#include "deltakit/characters.hpp"

#include <numeric>
#include <string>

#include "deltakit/arith.hpp"
#include "deltakit/compensated.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/roots.hpp"

namespace deltakit::characters {

namespace {

struct Component {
  std::int64_t modulus;     // p^e
  std::int64_t generator;   // generator of the component, as residue mod p^e
  std::int64_t order;
};

std::int64_t directConductor(const CharacterGroup& group, const std::vector<std::int64_t>& indices) {
  const std::int64_t m = group.modulus();
  auto exponentOf = [&](std::int64_t n) {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      t += indices[i] * group.log(n, i) * (group.exponent() / group.orders()[i]);
      t %= group.exponent();
    }
    return t;
  };
  for (std::int64_t d : arith::factorize(m).divisors()) {
    bool trivial = true;
    for (std::int64_t n = 1; n < m + 1 && trivial; n += d) {
      const std::int64_t r = n % m;
      if (!group.isUnit(r)) continue;
      trivial = exponentOf(r) == 0;
    }
    if (trivial) return d;
  }
  return m;
}

}  // namespace

CharacterGroup::CharacterGroup(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw InvalidArgument("CharacterGroup: modulus must be positive");
  std::vector<std::pair<std::int64_t, std::vector<Component>>> parts;
  for (const auto& [p, e] : arith::factorize(modulus).factors()) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    std::vector<Component> comps;
    if (p == 2) {
      if (e == 2) comps.push_back({pe, pe - 1, 2});
      if (e >= 3) {
        comps.push_back({pe, pe - 1, 2});
        comps.push_back({pe, 5, pe / 4});
      }
    } else {
      comps.push_back({pe, arith::leastPrimitiveRoot(p, e), pe / p * (p - 1)});
    }
    parts.emplace_back(pe, std::move(comps));
  }

  std::vector<Component> flat;
  for (const auto& [pe, comps] : parts) {
    for (const auto& c : comps) {
      // Lift to M: generator mod p^e and 1 modulo the complementary factor.
      const std::int64_t rest = modulus / pe;
      generators_.push_back(arith::crt(c.generator, pe, 1, rest));
      orders_.push_back(c.order);
      exponent_ = std::lcm(exponent_, c.order);
      size_ *= c.order;
      flat.push_back(c);
    }
  }

  const std::size_t g = generators_.size();
  logs_.assign(static_cast<std::size_t>(modulus) * std::max<std::size_t>(g, 1), -1);
  for (std::size_t i = 0; i < g; ++i) {
    const Component& c = flat[i];
    const std::int64_t pe = c.modulus;
    const bool two_adic = pe % 2 == 0;
    // Power table of the component generator.
    std::vector<std::int32_t> dlog(static_cast<std::size_t>(pe), -1);
    std::int64_t x = 1;
    for (std::int64_t l = 0; l < c.order; ++l) {
      dlog[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(l);
      x = x * c.generator % pe;
    }
    for (std::int64_t n = 0; n < modulus; ++n) {
      if (std::gcd(n, modulus) != 1) continue;
      std::int64_t r = n % pe;
      std::int32_t value;
      if (two_adic && pe >= 8) {
        const bool minus = r % 4 == 3;
        if (c.generator == pe - 1) {
          value = minus ? 1 : 0;
        } else {
          if (minus) r = pe - r;
          value = dlog[static_cast<std::size_t>(r)];
        }
      } else {
        value = dlog[static_cast<std::size_t>(r)];
      }
      logs_[static_cast<std::size_t>(n) * g + i] = value;
    }
  }
  if (g == 0) {
    for (std::int64_t n = 0; n < modulus; ++n) {
      if (std::gcd(n, modulus) == 1) logs_[static_cast<std::size_t>(n)] = 0;
    }
  }
}

bool CharacterGroup::isUnit(std::int64_t n) const {
  return std::gcd(arith::mod(n, modulus_), modulus_) == 1;
}

std::int64_t CharacterGroup::log(std::int64_t n, std::size_t i) const {
  const std::int64_t r = arith::mod(n, modulus_);
  return logs_[static_cast<std::size_t>(r) * generators_.size() + i];
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group,
                                       std::vector<std::int64_t> indices)
    : group_(std::move(group)), indices_(std::move(indices)) {
  if (indices_.size() != group_->generators().size()) {
    throw InvalidArgument("DirichletCharacter: index vector does not match the group");
  }
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    indices_[i] = arith::mod(indices_[i], group_->orders()[i]);
  }
  conductor_ = directConductor(*group_, indices_);
}

std::int64_t DirichletCharacter::exponent(std::int64_t n) const {
  if (!group_->isUnit(n)) return -1;
  const std::int64_t big = group_->exponent();
  std::int64_t t = 0;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    t = (t + indices_[i] * group_->log(n, i) % group_->orders()[i] * (big / group_->orders()[i])) % big;
  }
  return t;
}

std::complex<double> DirichletCharacter::operator()(std::int64_t n) const {
  const std::int64_t t = exponent(n);
  if (t < 0) return {0.0, 0.0};
  return unitRoot(t, denominator());
}

bool DirichletCharacter::isPrincipal() const {
  for (std::int64_t j : indices_) {
    if (j != 0) return false;
  }
  return true;
}

std::int64_t DirichletCharacter::order() const {
  std::int64_t result = 1;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const std::int64_t o = group_->orders()[i];
    result = std::lcm(result, o / std::gcd(indices_[i], o));
  }
  return result;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  std::vector<std::int64_t> neg(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) neg[i] = -indices_[i];
  return DirichletCharacter(group_, std::move(neg));
}

std::vector<std::int64_t> DirichletCharacter::exponentTable() const {
  std::vector<std::int64_t> table(static_cast<std::size_t>(modulus()));
  for (std::int64_t n = 0; n < modulus(); ++n) table[static_cast<std::size_t>(n)] = exponent(n);
  return table;
}

std::vector<DirichletCharacter> enumerateCharacters(std::int64_t modulus) {
  auto group = std::make_shared<const CharacterGroup>(modulus);
  const auto& orders = group->orders();
  std::vector<DirichletCharacter> result;
  result.reserve(static_cast<std::size_t>(group->size()));
  std::vector<std::int64_t> idx(orders.size(), 0);
  for (std::int64_t count = 0; count < group->size(); ++count) {
    result.emplace_back(group, idx);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < orders[i]) break;
      idx[i] = 0;
    }
  }
  return result;
}

std::vector<DirichletCharacter> primitiveCharacters(std::int64_t modulus) {
  std::vector<DirichletCharacter> result;
  for (auto& chi : enumerateCharacters(modulus)) {
    if (chi.isPrimitive()) result.push_back(std::move(chi));
  }
  return result;
}

std::int64_t conductor(const DirichletCharacter& chi) {
  const std::int64_t m = chi.modulus();
  for (std::int64_t d : arith::factorize(m).divisors()) {
    bool trivial = true;
    for (std::int64_t n = 1; n <= m && trivial; n += d) {
      const std::int64_t t = chi.exponent(n);
      if (t >= 0) trivial = t == 0;
    }
    if (trivial) return d;
  }
  return m;
}

std::complex<double> gaussSum(const DirichletCharacter& chi) {
  const std::int64_t m = chi.modulus();
  const std::int64_t big = chi.denominator();
  // chi(b) e(b/M) = e((t(b) M + b L) / (L M)); exact integer phase.
  const std::int64_t denom = big * m;
  CompensatedComplexSum sum;
  for (std::int64_t b = 0; b < m; ++b) {
    const std::int64_t t = chi.exponent(b);
    if (t < 0) continue;
    sum += unitRoot(t * m + b * big, denom);
  }
  return sum.value();
}

std::int64_t orthogonalitySum(std::int64_t modulus, std::int64_t n, std::int64_t m) {
  if (arith::gcd(n * m, modulus) != 1 && modulus > 1) {
    throw NotCoprime("orthogonalitySum: gcd(nm, M) must be 1");
  }
  CompensatedComplexSum sum;
  for (const auto& chi : enumerateCharacters(modulus)) {
    sum += chi(n) * std::conj(chi(m));
  }
  return std::llround(sum.value().real());
}

}  // namespace deltakit::characters
