#include "deltakit/roots.hpp"

#include <numbers>

#include "deltakit/errors.hpp"

namespace deltakit {

std::complex<double> unitRoot(std::int64_t k, std::int64_t m) {
  if (m < 1) throw InvalidArgument("unitRoot: modulus must be positive");
  std::int64_t r = k % m;
  if (r < 0) r += m;
  if (r == 0) return {1.0, 0.0};
  // Fold into [-1/2, 1/2) before scaling to keep the angle small.
  const double frac = 2 * r < m ? static_cast<double>(r) / static_cast<double>(m)
                                : static_cast<double>(r - m) / static_cast<double>(m);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

RootTable::RootTable(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw InvalidArgument("RootTable: modulus must be positive");
  table_.reserve(static_cast<std::size_t>(modulus));
  for (std::int64_t j = 0; j < modulus; ++j) table_.push_back(unitRoot(j, modulus));
}

}  // namespace deltakit
