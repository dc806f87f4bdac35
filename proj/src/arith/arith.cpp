#include "deltakit/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "deltakit/errors.hpp"

namespace deltakit::arith {

namespace {

constexpr std::int64_t kTrialBound = 1 << 21;

std::uint64_t pollardBrent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulMod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulMod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void splitLarge(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (isPrime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollardBrent(n);
  splitLarge(d, out);
  splitLarge(n / d, out);
}

}  // namespace

Factorization::Factorization(std::int64_t n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {}

bool Factorization::isSquarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

int Factorization::mobius() const {
  if (!isSquarefree()) return 0;
  return factors_.size() % 2 == 0 ? 1 : -1;
}

std::int64_t Factorization::eulerPhi() const {
  std::int64_t result = 1;
  for (const auto& [p, e] : factors_) {
    result *= p - 1;
    for (int i = 1; i < e; ++i) result *= p;
  }
  return result;
}

std::int64_t Factorization::divisorCount() const {
  std::int64_t result = 1;
  for (const auto& pp : factors_) result *= pp.exponent + 1;
  return result;
}

std::int64_t Factorization::phiStar() const {
  // Multiplicative with phi*(p) = p - 2 and phi*(p^e) = p^(e-2) (p-1)^2.
  std::int64_t result = 1;
  for (const auto& [p, e] : factors_) {
    if (e == 1) {
      result *= p - 2;
    } else {
      std::int64_t local = (p - 1) * (p - 1);
      for (int i = 2; i < e; ++i) local *= p;
      result *= local;
    }
  }
  return result;
}

std::vector<std::int64_t> Factorization::divisors() const {
  std::vector<std::int64_t> divs{1};
  for (const auto& [p, e] : factors_) {
    const std::size_t count = divs.size();
    std::int64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::uint64_t mulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powMod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulMod(result, base, m);
    base = mulMod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::int64_t n) {
  if (n <= 0) {
    throw InvalidArgument("factorize: n must be positive, got " + std::to_string(n));
  }
  std::vector<PrimePower> factors;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p <= kTrialBound && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  if (rest > 1) {
    std::vector<std::uint64_t> large;
    splitLarge(static_cast<std::uint64_t>(rest), large);
    std::sort(large.begin(), large.end());
    for (std::uint64_t p : large) {
      if (!factors.empty() && factors.back().prime == static_cast<std::int64_t>(p)) {
        ++factors.back().exponent;
      } else {
        factors.push_back({static_cast<std::int64_t>(p), 1});
      }
    }
  }
  return Factorization(n, std::move(factors));
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (c < 1) throw InvalidArgument("gcd3: c must be positive");
  return gcd(gcd(a, b), c);
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t inverseMod(std::int64_t a, std::int64_t m) {
  if (m < 2) throw InvalidArgument("inverseMod: modulus must be at least 2");
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quot * r};
    std::tie(old_s, s) = std::pair{s, old_s - quot * s};
  }
  if (old_r != 1) {
    throw NonInvertible("inverseMod: " + std::to_string(a) + " is not invertible modulo " +
                        std::to_string(m));
  }
  return mod(old_s, m);
}

std::int64_t crt(std::int64_t r1, std::int64_t m1, std::int64_t r2, std::int64_t m2) {
  if (gcd(m1, m2) != 1) throw NotCoprime("crt: moduli must be coprime");
  if (m1 == 1) return mod(r2, m2);
  if (m2 == 1) return mod(r1, m1);
  const std::int64_t m = m1 * m2;
  const auto t = static_cast<__int128>(mod(r2 - r1, m2)) * inverseMod(m1, m2) % m2;
  return mod(static_cast<std::int64_t>(r1 + static_cast<__int128>(m1) * t % m), m);
}

std::int64_t phiStar(std::int64_t m) {
  const auto f = factorize(m);
  // Dirichlet convolution mu * phi, evaluated over the divisors of m.
  std::int64_t total = 0;
  for (std::int64_t d : f.divisors()) total += mobius(d) * eulerPhi(m / d);
  return total;
}

int mobius(std::int64_t n) { return factorize(n).mobius(); }
std::int64_t eulerPhi(std::int64_t n) { return factorize(n).eulerPhi(); }
std::int64_t divisorCount(std::int64_t n) { return factorize(n).divisorCount(); }

std::int64_t leastPrimitiveRoot(std::int64_t p, int e) {
  if (p == 2 || !isPrime(static_cast<std::uint64_t>(p)) || e < 1) {
    throw InvalidArgument("leastPrimitiveRoot: requires an odd prime power");
  }
  std::int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  const std::int64_t order = (p - 1) * (pe / p);
  std::vector<std::int64_t> prime_divisors;
  for (const auto& pp : factorize(order).factors()) prime_divisors.push_back(pp.prime);
  for (std::int64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    const bool generates = std::all_of(prime_divisors.begin(), prime_divisors.end(), [&](std::int64_t l) {
      return powMod(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(order / l),
                    static_cast<std::uint64_t>(pe)) != 1;
    });
    if (generates) return g;
  }
  throw InvalidArgument("leastPrimitiveRoot: no generator found");
}

MultiplicativeTable::MultiplicativeTable(std::int64_t bound)
    : bound_(bound),
      mu_(static_cast<std::size_t>(bound + 1), 1),
      phi_(static_cast<std::size_t>(bound + 1), 1),
      tau_(static_cast<std::size_t>(bound + 1), 1),
      phi_star_(static_cast<std::size_t>(bound + 1), 1) {
  if (bound < 1) throw InvalidArgument("MultiplicativeTable: bound must be positive");
  std::vector<std::int64_t> rest(static_cast<std::size_t>(bound + 1));
  std::iota(rest.begin(), rest.end(), 0);
  mu_[0] = 0;
  phi_[0] = tau_[0] = phi_star_[0] = 0;
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (rest[p] != p) continue;  // composite: p already divided out
    for (std::int64_t n = p; n <= bound; n += p) {
      int e = 0;
      std::int64_t pk = 1;
      while (rest[n] % p == 0) {
        rest[n] /= p;
        pk *= p;
        ++e;
      }
      mu_[n] = e > 1 ? 0 : -mu_[n];
      phi_[n] *= pk / p * (p - 1);
      tau_[n] *= e + 1;
      phi_star_[n] *= e == 1 ? p - 2 : pk / p / p * (p - 1) * (p - 1);
    }
  }
}

}  // namespace deltakit::arith
