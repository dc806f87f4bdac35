#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "deltakit/arith.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/modforms.hpp"

namespace deltakit::modforms {

namespace {

struct CatalogEntry {
  FormId id;
  std::string_view name;
  std::int64_t level;
  int weight;
  std::vector<EtaFactor> factors;
};

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {FormId::Delta_1_12, "Delta_1_12", 1, 12, {{1, 24}}},
      {FormId::E8_2_8, "E8_2_8", 2, 8, {{1, 8}, {2, 8}}},
      {FormId::E6_3_6, "E6_3_6", 3, 6, {{1, 6}, {3, 6}}},
      {FormId::E4_5_4, "E4_5_4", 5, 4, {{1, 4}, {5, 4}}},
      {FormId::E2_11_2, "E2_11_2", 11, 2, {{1, 2}, {11, 2}}},
  };
  return entries;
}

const CatalogEntry& entry(FormId id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  throw InvalidArgument("unknown form id");
}

// Saturating a * b for nonnegative operands.
unsigned __int128 satMul(unsigned __int128 a, unsigned __int128 b) {
  unsigned __int128 out;
  if (__builtin_mul_overflow(a, b, &out)) return ~static_cast<unsigned __int128>(0);
  return out;
}

void validate(const Newform& f) {
  if (f.bound() < 1 || f.a(1) != 1) throw ValidationFailed(f.name() + ": a(1) must equal 1");
  for (std::int64_t n = 1; n <= f.bound(); ++n) {
    if (!deligneHolds(f, n)) {
      throw ValidationFailed(f.name() + ": Deligne bound fails at n = " + std::to_string(n));
    }
  }
  for (std::int64_t n = 1; n <= f.bound(); ++n) {
    if (arith::gcd(n, f.level()) != 1) continue;
    for (std::int64_t m = 1; m * n <= f.bound(); ++m) {
      if (heckeIntegerDefect(f, m, n) != 0) {
        throw ValidationFailed(f.name() + ": Hecke relation fails at (m, n) = (" + std::to_string(m) + ", " +
                               std::to_string(n) + ")");
      }
    }
  }
}

}  // namespace

std::string_view formName(FormId id) { return entry(id).name; }

std::optional<FormId> parseFormId(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

const std::vector<FormId>& allForms() {
  static const std::vector<FormId> ids = {FormId::Delta_1_12, FormId::E8_2_8, FormId::E6_3_6, FormId::E4_5_4,
                                          FormId::E2_11_2};
  return ids;
}

Newform::Newform(std::string name, std::int64_t level, int weight, std::vector<std::int64_t> coeffs)
    : name_(std::move(name)), level_(level), weight_(weight), coeffs_(std::move(coeffs)) {}

Newform Newform::builtin(FormId id, std::int64_t bound) {
  const auto& e = entry(id);
  std::vector<std::int64_t> coeffs;
  try {
    coeffs = etaPowerSeries(e.factors, bound);
  } catch (const Overflow& err) {
    if (err.index() <= 1) throw;
    coeffs = etaPowerSeries(e.factors, err.index() - 1);
  }
  return Newform(std::string(e.name), e.level, e.weight, std::move(coeffs));
}

Newform Newform::fromCsv(std::istream& in, std::string name) {
  std::string line;
  auto nextLine = [&]() -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    return false;
  };
  auto parsePair = [&](std::int64_t& x, std::int64_t& y) {
    std::istringstream ss(line);
    char comma = 0;
    if (!(ss >> x >> comma >> y) || comma != ',') {
      throw ValidationFailed(name + ": malformed CSV row '" + line + "'");
    }
  };
  if (!nextLine()) throw ValidationFailed(name + ": empty input");
  if (line.rfind("level", 0) == 0) {
    if (!nextLine()) throw ValidationFailed(name + ": missing level,weight row");
  }
  std::int64_t level = 0, weight = 0;
  parsePair(level, weight);
  if (level < 1 || weight < 2 || weight % 2 != 0) {
    throw ValidationFailed(name + ": level must be positive and weight even >= 2");
  }
  std::vector<std::int64_t> coeffs{0};
  while (nextLine()) {
    if (line.rfind("n,", 0) == 0) continue;
    std::int64_t n = 0, an = 0;
    parsePair(n, an);
    if (n != static_cast<std::int64_t>(coeffs.size())) {
      throw ValidationFailed(name + ": rows must list n = 1, 2, ... consecutively");
    }
    coeffs.push_back(an);
  }
  Newform f(std::move(name), level, static_cast<int>(weight), std::move(coeffs));
  validate(f);
  return f;
}

std::int64_t Newform::a(std::int64_t n) const {
  if (n < 1 || n > bound()) {
    throw InvalidArgument(name_ + ": coefficient index " + std::to_string(n) + " outside [1, " +
                          std::to_string(bound()) + "]");
  }
  return coeffs_[static_cast<std::size_t>(n)];
}

double lambda(const Newform& f, std::int64_t n) {
  return static_cast<double>(f.a(n)) / std::pow(static_cast<double>(n), 0.5 * (f.weight() - 1));
}

double heckeResidual(const Newform& f, std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw InvalidArgument("heckeResidual: m and n must be positive");
  if (arith::gcd(n, f.level()) != 1) throw InvalidArgument("heckeResidual: gcd(n, P) must be 1");
  if (m * n > f.bound()) throw InvalidArgument("heckeResidual: m n exceeds the coefficient bound");
  double rhs = 0.0;
  for (std::int64_t d : arith::factorize(arith::gcd(m, n)).divisors()) {
    if (arith::gcd(d, f.level()) != 1) continue;
    rhs += lambda(f, m * n / (d * d));
  }
  return std::fabs(lambda(f, m) * lambda(f, n) - rhs);
}

__int128 heckeIntegerDefect(const Newform& f, std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw InvalidArgument("heckeIntegerDefect: m and n must be positive");
  if (arith::gcd(n, f.level()) != 1) throw InvalidArgument("heckeIntegerDefect: gcd(n, P) must be 1");
  if (m * n > f.bound()) throw InvalidArgument("heckeIntegerDefect: m n exceeds the coefficient bound");
  __int128 rhs = 0;
  for (std::int64_t d : arith::factorize(arith::gcd(m, n)).divisors()) {
    if (arith::gcd(d, f.level()) != 1) continue;
    __int128 dk = 1;
    for (int i = 0; i < f.weight() - 1; ++i) dk *= d;
    rhs += dk * f.a(m * n / (d * d));
  }
  return static_cast<__int128>(f.a(m)) * f.a(n) - rhs;
}

bool deligneHolds(const Newform& f, std::int64_t n) {
  const std::int64_t an = f.a(n);
  const unsigned __int128 mag = static_cast<unsigned __int128>(an < 0 ? -static_cast<__int128>(an) : an);
  const unsigned __int128 lhs = mag * mag;
  const auto tau = static_cast<unsigned __int128>(arith::divisorCount(n));
  unsigned __int128 rhs = satMul(tau, tau);
  for (int i = 0; i < f.weight() - 1; ++i) rhs = satMul(rhs, static_cast<unsigned __int128>(n));
  return lhs <= rhs;
}

TwistedCoefficients twist(const Newform& f, const characters::DirichletCharacter& chi, std::int64_t bound) {
  if (arith::gcd(f.level(), chi.modulus()) != 1) {
    throw InvalidArgument("twist: level and character modulus must be coprime");
  }
  if (bound > f.bound()) throw InvalidArgument("twist: bound exceeds the coefficient table");
  TwistedCoefficients out{f.name(), chi.modulus(), std::vector<std::complex<double>>(static_cast<std::size_t>(bound + 1))};
  for (std::int64_t n = 1; n <= bound; ++n) {
    out.values[static_cast<std::size_t>(n)] = chi(n) * lambda(f, n);
  }
  return out;
}

}  // namespace deltakit::modforms
