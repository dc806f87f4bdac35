#pragma once

namespace deltakit::kernels {

inline constexpr int kMaxBesselOrder = 20;
inline constexpr double kBesselCrossover = 12.0;

/// J_order(x) for 0 <= order <= 20 and x >= 0. Power series up to the
/// crossover; above it, the Hankel-type integral
///   J(x) = Re[ sqrt(2/(pi x)) e^{i(x - order pi/2 - pi/4)} / Gamma(order+1/2)
///              * int_0^inf e^{-u} u^{order-1/2} (1 + iu/(2x))^{order-1/2} du ]
/// is evaluated by quadrature until its asymptotic series reaches full
/// double precision, after which the series is used.
double besselJ(int order, double x);

double besselJSeries(int order, double x);
double besselJIntegral(int order, double x);
double besselJAsymptotic(int order, double x);

/// Smallest x at which the truncated asymptotic series attains about 1e-16
/// relative accuracy.
double asymptoticThreshold(int order);

class BesselEvaluator {
 public:
  explicit BesselEvaluator(int order, double crossover = kBesselCrossover);
  int order() const { return order_; }
  double crossover() const { return crossover_; }
  double operator()(double x) const;

 private:
  int order_;
  double crossover_;
};

}  // namespace deltakit::kernels
