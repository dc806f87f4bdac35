#include "deltakit/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "deltakit/arith.hpp"
#include "deltakit/compensated.hpp"
#include "deltakit/errors.hpp"

namespace deltakit::expsums {

namespace {

void annotate(KloostermanValue& kv) {
  const double nearest = std::round(kv.value);
  if (std::fabs(kv.value - nearest) <= 1e-6) kv.nearestInteger = static_cast<std::int64_t>(nearest);
}

double crtValue(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (c == 1) return 1.0;
  const auto fac = arith::factorize(c);
  const auto& [p, e] = fac.factors().front();
  std::int64_t c1 = 1;
  for (int i = 0; i < e; ++i) c1 *= p;
  const std::int64_t c2 = c / c1;
  if (c2 == 1) return kloosterman(a, b, ModulusTables(c1)).value;
  const std::int64_t c2bar = arith::inverseMod(c2, c1);
  const std::int64_t c1bar = c2 == 1 ? 0 : arith::inverseMod(c1, c2);
  const std::int64_t a1 = arith::mod(static_cast<std::int64_t>(static_cast<__int128>(a) * c2bar % c1), c1);
  const std::int64_t b1 = arith::mod(static_cast<std::int64_t>(static_cast<__int128>(b) * c2bar % c1), c1);
  const std::int64_t a2 = arith::mod(static_cast<std::int64_t>(static_cast<__int128>(a) * c1bar % c2), c2);
  const std::int64_t b2 = arith::mod(static_cast<std::int64_t>(static_cast<__int128>(b) * c1bar % c2), c2);
  return kloosterman(a1, b1, ModulusTables(c1)).value * crtValue(a2, b2, c2);
}

}  // namespace

ModulusTables::ModulusTables(std::int64_t c) : c_(c), roots_(c) {
  if (c < 1) throw InvalidArgument("ModulusTables: modulus must be positive");
  if (c == 1) {
    units_.push_back(0);
    inverses_.push_back(0);
    return;
  }
  for (std::int64_t x = 1; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    units_.push_back(x);
    inverses_.push_back(arith::inverseMod(x, c));
  }
}

double weilBound(std::int64_t a, std::int64_t b, std::int64_t c) {
  return static_cast<double>(arith::divisorCount(c)) *
         std::sqrt(static_cast<double>(arith::gcd3(a, b, c))) * std::sqrt(static_cast<double>(c));
}

KloostermanValue kloosterman(std::int64_t a, std::int64_t b, const ModulusTables& tables) {
  const std::int64_t c = tables.modulus();
  const std::int64_t ar = arith::mod(a, c);
  const std::int64_t br = arith::mod(b, c);
  CompensatedComplexSum sum;
  const auto& units = tables.units();
  const auto& inv = tables.inverses();
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto phase = static_cast<std::int64_t>(
        (static_cast<__int128>(ar) * units[i] + static_cast<__int128>(br) * inv[i]) % c);
    sum += tables.roots()(phase);
  }
  KloostermanValue kv;
  kv.a = a;
  kv.b = b;
  kv.c = c;
  kv.value = sum.value().real();
  kv.imag = sum.value().imag();
  kv.weilBound = weilBound(a, b, c);
  annotate(kv);
  return kv;
}

KloostermanValue kloosterman(std::int64_t a, std::int64_t b, std::int64_t c, KloostermanMethod method) {
  if (c < 1) throw InvalidArgument("kloosterman: modulus must be positive");
  if (method == KloostermanMethod::Brute) return kloosterman(a, b, ModulusTables(c));
  KloostermanValue kv;
  kv.a = a;
  kv.b = b;
  kv.c = c;
  kv.value = crtValue(arith::mod(a, c), arith::mod(b, c), c);
  kv.weilBound = weilBound(a, b, c);
  annotate(kv);
  return kv;
}

TwistedPair kloostermanTwistedMult(std::int64_t m, std::int64_t n, std::int64_t c1, std::int64_t c2) {
  if (c1 < 1 || c2 < 1) throw InvalidArgument("kloostermanTwistedMult: moduli must be positive");
  if (std::gcd(c1, c2) != 1) throw NotCoprime("kloostermanTwistedMult: moduli must be coprime");
  const double left = kloosterman(m, n, c1 * c2).value;
  const std::int64_t c2bar = c1 == 1 ? 0 : arith::inverseMod(c2, c1);
  const std::int64_t c1bar = c2 == 1 ? 0 : arith::inverseMod(c1, c2);
  const double right = kloosterman(m * c2bar, n * c2bar, c1).value *
                       kloosterman(m * c1bar, n * c1bar, c2).value;
  return {left, right};
}

double oldFormSum(std::int64_t r, std::int64_t M, std::int64_t n, std::int64_t m, std::int64_t P,
                  std::int64_t q) {
  if (q < 1 || P < 1) throw InvalidArgument("oldFormSum: P and q must be positive");
  if (std::gcd(P, q) != 1) throw NonInvertible("oldFormSum: P is not invertible modulo q");
  const std::int64_t pbar = q == 1 ? 0 : arith::inverseMod(P, q);
  return kloosterman(r * M, arith::mod(n - m, q) * pbar, q).value;
}

double newFormSum(std::int64_t r, std::int64_t M, std::int64_t n, std::int64_t m, std::int64_t P,
                  std::int64_t q) {
  if (q < 1 || P < 1) throw InvalidArgument("newFormSum: P and q must be positive");
  return kloosterman(r * M, n - m, q * P).value;
}

std::vector<std::int64_t> gammaRecombine(std::int64_t q, std::int64_t P) {
  if (q < 1 || P < 1) throw InvalidArgument("gammaRecombine: q and P must be positive");
  if (std::gcd(q, P) != 1) throw NotCoprime("gammaRecombine: gcd(q, P) must be 1");
  std::vector<std::int64_t> result;
  for (std::int64_t a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    for (std::int64_t b = 0; b < P; ++b) result.push_back((a + b * q) % (q * P));
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::int64_t ramanujanSum(std::int64_t q, std::int64_t n) {
  if (q < 1) throw InvalidArgument("ramanujanSum: q must be positive");
  const std::int64_t g = arith::gcd(n, q);  // gcd(0, q) = q
  std::int64_t total = 0;
  for (std::int64_t d : arith::factorize(g).divisors()) total += d * arith::mobius(q / d);
  return total;
}

}  // namespace deltakit::expsums
