#include <charconv>
#include <string>

#include "deltakit/errors.hpp"
#include "deltakit/pipeline.hpp"

namespace deltakit::pipeline {
namespace {

std::int64_t parseInteger(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument("not a rational number: '" + whole + "'");
  }
  return value;
}

}  // namespace

ExponentBudget exponentBudget(const Rational& eta) {
  if (eta < 0) throw InvalidArgument("exponentBudget: eta must be nonnegative");
  ExponentBudget b;
  b.eta = eta;
  b.delta = (Rational(2) - 5 * eta) / (10 * (2 + eta));
  b.finalExponent = Rational(1, 4) - b.delta / 2;
  // The hybrid range is open at eta = 0.
  b.subconvex = eta > 0 && b.delta > 0;
  b.blomerHarcosDisplayed = Rational(1, 4) - Rational(1) / (8 * (2 + eta)) - (1 - eta) / (4 * (2 + eta));
  // P^{1/4} M^{3/8} + P^{1/2} M^{1/4} with P = M^eta and Q = M^{2 + eta}.
  const Rational first = (eta / 4 + Rational(3, 8)) / (2 + eta);
  const Rational second = (eta / 2 + Rational(1, 4)) / (2 + eta);
  b.blomerHarcosTwoTerm = std::max(first, second);
  return b;
}

Rational balancingDelta(const Rational& eta) {
  if (eta < 0) throw InvalidArgument("balancingDelta: eta must be nonnegative");
  // Exponents of M with P = M^eta, written as constant + slope * delta.
  // phi*(M) times the off-diagonal bound: M * P^{1/2} * P^{5/8 + d/4} / M^{1/4 - d/2}.
  const Rational boundConst = 1 + eta / 2 + eta * Rational(5, 8) - Rational(1, 4);
  const Rational boundSlope = eta / 4 + Rational(1, 2);
  // Square of the target Q^{1/4 - d/2}: Q^{1/2 - d} with Q = M^{2 + eta}.
  const Rational targetConst = (2 + eta) / 2;
  const Rational targetSlope = -(2 + eta);
  return (targetConst - boundConst) / (boundSlope - targetSlope);
}

Rational parseRational(const std::string& raw) {
  const auto first = raw.find_first_not_of(" \t");
  const auto last = raw.find_last_not_of(" \t");
  const std::string text = first == std::string::npos ? std::string() : raw.substr(first, last - first + 1);
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parseInteger(text, text));
  const std::int64_t num = parseInteger(std::string_view(text).substr(0, slash), text);
  const std::int64_t den = parseInteger(std::string_view(text).substr(slash + 1), text);
  if (den == 0) throw InvalidArgument("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string formatRational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace deltakit::pipeline
