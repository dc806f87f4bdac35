#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace deltakit {

/// e(x) = exp(2 pi i x) at the rational point k / m.
std::complex<double> unitRoot(std::int64_t k, std::int64_t m);

/// Precomputed e(j / m) for j = 0 .. m-1.
class RootTable {
 public:
  explicit RootTable(std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  /// e(k / m) for any integer k.
  std::complex<double> operator()(std::int64_t k) const {
    std::int64_t r = k % modulus_;
    if (r < 0) r += modulus_;
    return table_[static_cast<std::size_t>(r)];
  }

 private:
  std::int64_t modulus_;
  std::vector<std::complex<double>> table_;
};

}  // namespace deltakit
