#include "deltakit/quadrature.hpp"

namespace deltakit::quad {

std::vector<double> uniformBreaks(double a, double b, int panels) {
  if (panels < 1) throw InvalidArgument("uniformBreaks: need at least one panel");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) out.push_back(a + (b - a) * i / panels);
  out.back() = b;
  return out;
}

}  // namespace deltakit::quad
