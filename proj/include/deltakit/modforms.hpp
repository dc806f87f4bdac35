#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deltakit/characters.hpp"

namespace deltakit::modforms {

/// One factor eta(multiplier * z)^power of an eta quotient.
struct EtaFactor {
  std::int64_t multiplier;
  std::int64_t power;
};

enum class EtaMultiplication {
  Sparse,  // fold each factor in one pentagonal series at a time
  Dense,   // expand each factor separately, then multiply the dense series
};

/// Coefficients a(0..N) of prod eta(t z)^a / q^lead, shifted so that
/// a(lead) is the leading coefficient; a(n) = 0 for n < lead. Exact; throws
/// Overflow (message carries the first offending index) when a coefficient
/// leaves int64, and InvalidArgument when sum(a t) / 24 is not a positive
/// integer.
std::vector<std::int64_t> etaPowerSeries(const std::vector<EtaFactor>& factors, std::int64_t bound,
                                         EtaMultiplication mode = EtaMultiplication::Sparse);

/// The built-in catalog of eta-product newforms of prime (or unit) level.
enum class FormId { Delta_1_12, E8_2_8, E6_3_6, E4_5_4, E2_11_2 };

std::string_view formName(FormId id);
std::optional<FormId> parseFormId(std::string_view name);
const std::vector<FormId>& allForms();

class Newform {
 public:
  /// Generates a(n) for n <= bound. If bound exceeds the int64 range of
  /// the form's coefficients, the stored bound is reduced to the largest
  /// safe value.
  static Newform builtin(FormId id, std::int64_t bound);

  /// Reads `level,weight` then rows `n,a_n` (n = 1, 2, ... consecutive) and
  /// accepts the form only if a(1) = 1, the Deligne bound and the Hecke
  /// relations hold on the whole table. Throws ValidationFailed otherwise.
  static Newform fromCsv(std::istream& in, std::string name);

  const std::string& name() const { return name_; }
  std::int64_t level() const { return level_; }
  int weight() const { return weight_; }
  std::int64_t bound() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }

  /// Exact integer coefficient a(n), 1 <= n <= bound.
  std::int64_t a(std::int64_t n) const;
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

 private:
  Newform(std::string name, std::int64_t level, int weight, std::vector<std::int64_t> coeffs);

  std::string name_;
  std::int64_t level_;
  int weight_;
  std::vector<std::int64_t> coeffs_;  // index 0 unused
};

/// lambda_f(n) = a(n) / n^((k-1)/2).
double lambda(const Newform& f, std::int64_t n);

/// |lambda(m) lambda(n) - sum_{d | (m,n), (d,P)=1} lambda(mn / d^2)|.
/// Requires gcd(n, P) = 1 and m n <= bound.
double heckeResidual(const Newform& f, std::int64_t m, std::int64_t n);

/// The same relation on the integers a(.): a(m) a(n) - sum d^(k-1) a(mn/d^2).
__int128 heckeIntegerDefect(const Newform& f, std::int64_t m, std::int64_t n);

/// |a(n)| <= tau(n) n^((k-1)/2), decided exactly.
bool deligneHolds(const Newform& f, std::int64_t n);

struct TwistedCoefficients {
  std::string form;
  std::int64_t modulus;
  /// values[n] = chi(n) lambda(n) for 1 <= n <= N; values[0] = 0.
  std::vector<std::complex<double>> values;
};

/// Requires gcd(P, M) = 1 and N <= bound.
TwistedCoefficients twist(const Newform& f, const characters::DirichletCharacter& chi, std::int64_t bound);

}  // namespace deltakit::modforms
