#include <string>

#include "deltakit/errors.hpp"
#include "deltakit/modforms.hpp"

namespace deltakit::modforms {

namespace {

using Wide = __int128;
using Series = std::vector<Wide>;

struct Term {
  std::int64_t exponent;
  int sign;
};

// prod_{n>=1} (1 - q^(t n)) = sum_k (-1)^k q^(t k(3k-1)/2) up to degree N.
std::vector<Term> pentagonal(std::int64_t t, std::int64_t degree) {
  std::vector<Term> terms{{0, 1}};
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t e1 = t * k * (3 * k - 1) / 2;
    const std::int64_t e2 = t * k * (3 * k + 1) / 2;
    if (e1 > degree) break;
    const int sign = k % 2 == 0 ? 1 : -1;
    terms.push_back({e1, sign});
    if (e2 <= degree) terms.push_back({e2, sign});
  }
  return terms;
}

Wide checkedAdd(Wide a, Wide b) {
  Wide out;
  if (__builtin_add_overflow(a, b, &out)) throw Overflow("etaPowerSeries: 128-bit overflow");
  return out;
}

Wide checkedMul(Wide a, Wide b) {
  Wide out;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow("etaPowerSeries: 128-bit overflow");
  return out;
}

void multiplyBy(Series& s, const std::vector<Term>& terms) {
  // In place, high degree first, so lower coefficients are still original.
  for (std::size_t i = s.size(); i-- > 0;) {
    Wide acc = s[i];
    for (std::size_t k = 1; k < terms.size(); ++k) {
      const auto e = static_cast<std::size_t>(terms[k].exponent);
      if (e > i) break;
      acc = terms[k].sign > 0 ? checkedAdd(acc, s[i - e]) : checkedAdd(acc, -s[i - e]);
    }
    s[i] = acc;
  }
}

void divideBy(Series& s, const std::vector<Term>& terms) {
  // Solve s = c * E for c, E having constant term 1.
  for (std::size_t i = 0; i < s.size(); ++i) {
    Wide acc = s[i];
    for (std::size_t k = 1; k < terms.size(); ++k) {
      const auto e = static_cast<std::size_t>(terms[k].exponent);
      if (e > i) break;
      acc = terms[k].sign > 0 ? checkedAdd(acc, -s[i - e]) : checkedAdd(acc, s[i - e]);
    }
    s[i] = acc;
  }
}

Series dense(const Series& x, const Series& y) {
  Series out(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; i + j < out.size(); ++j) {
      out[i + j] = checkedAdd(out[i + j], checkedMul(x[i], y[j]));
    }
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> etaPowerSeries(const std::vector<EtaFactor>& factors, std::int64_t bound,
                                         EtaMultiplication mode) {
  if (bound < 1 || bound > 100000) throw InvalidArgument("etaPowerSeries: bound must lie in [1, 1e5]");
  std::int64_t weighted = 0;
  for (const auto& f : factors) {
    if (f.multiplier < 1) throw InvalidArgument("etaPowerSeries: multipliers must be positive");
    weighted += f.multiplier * f.power;
  }
  if (weighted <= 0 || weighted % 24 != 0) {
    throw InvalidArgument("etaPowerSeries: leading q-power sum(a t)/24 = " + std::to_string(weighted) +
                          "/24 is not a positive integer");
  }
  const std::int64_t lead = weighted / 24;
  if (lead > bound) return std::vector<std::int64_t>(static_cast<std::size_t>(bound + 1), 0);
  const std::int64_t degree = bound - lead;

  Series s(static_cast<std::size_t>(degree + 1), 0);
  s[0] = 1;
  if (mode == EtaMultiplication::Sparse) {
    for (const auto& f : factors) {
      const auto terms = pentagonal(f.multiplier, degree);
      for (std::int64_t i = 0; i < (f.power < 0 ? -f.power : f.power); ++i) {
        if (f.power > 0) {
          multiplyBy(s, terms);
        } else {
          divideBy(s, terms);
        }
      }
    }
  } else {
    // Reverse factor order, expand each factor on its own first.
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      Series part(s.size(), 0);
      part[0] = 1;
      const auto terms = pentagonal(it->multiplier, degree);
      for (std::int64_t i = 0; i < (it->power < 0 ? -it->power : it->power); ++i) {
        if (it->power > 0) {
          multiplyBy(part, terms);
        } else {
          divideBy(part, terms);
        }
      }
      s = dense(part, s);
    }
  }

  std::vector<std::int64_t> out(static_cast<std::size_t>(bound + 1), 0);
  for (std::int64_t i = 0; i <= degree; ++i) {
    const Wide v = s[static_cast<std::size_t>(i)];
    if (v > INT64_MAX || v < INT64_MIN) {
      throw Overflow("etaPowerSeries: coefficient " + std::to_string(i + lead) + " exceeds int64", i + lead);
    }
    out[static_cast<std::size_t>(i + lead)] = static_cast<std::int64_t>(v);
  }
  return out;
}

}  // namespace deltakit::modforms
