#include "testing/oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace torlin::testing {

double central_difference(const std::function<double(double)>& f, double t, double h) {
  return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

double directional_derivative(const TrigPoly& f, const Vector& x, const Vector& direction) {
  return central_difference([&](double t) { return f(Vector(x + t * direction)); }, 0.0, 1e-4);
}

double quadrature_integral(const PiecewiseCurve& g, const OneForm& eta) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  double total = 0.0;
  for (const auto& s : g.segments()) {
    double oscillation = 0.0;
    for (Index j = 0; j < eta.dim(); ++j) {
      for (const auto& [n, c] : eta[j].modes()) {
        oscillation = std::max(oscillation, std::abs(n.cast<double>().dot(s.displacement)));
      }
    }
    const int panels = 1 + static_cast<int>(std::ceil(oscillation));
    auto integrand = [&](double u) {
      const Vector p = s.start.coords + u * s.displacement;
      double acc = 0.0;
      for (Index j = 0; j < eta.dim(); ++j) acc += eta[j](p) * s.displacement[j];
      return acc;
    };
    for (int k = 0; k < panels; ++k) {
      total += Rule::integrate(integrand, static_cast<double>(k) / panels, static_cast<double>(k + 1) / panels);
    }
  }
  return total;
}

double brute_force_cmin(const std::vector<long double>& alpha, double tau, std::int64_t radius) {
  const std::size_t d = alpha.size();
  std::vector<long double> weight(static_cast<std::size_t>(radius) + 1);
  for (std::int64_t k = 0; k <= radius; ++k) weight[k] = std::pow(static_cast<long double>(k), static_cast<long double>(tau));
  std::vector<std::int64_t> n(d, -radius);
  long double best = std::numeric_limits<long double>::infinity();
  while (true) {
    std::int64_t sup = 0;
    long double dot = 0.0L;
    for (std::size_t i = 0; i < d; ++i) {
      sup = std::max<std::int64_t>(sup, std::llabs(n[i]));
      dot += static_cast<long double>(n[i]) * alpha[i];
    }
    if (sup > 0) best = std::min(best, std::fabs(dot) * weight[sup]);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (n[i] < radius) {
        ++n[i];
        break;
      }
      n[i] = -radius;
      if (i == 0) return static_cast<double>(best);
    }
  }
}

double coefficient_gap(const TrigPoly& a, const TrigPoly& b) {
  double scale = 0.0;
  for (const auto& [n, c] : b.modes()) scale = std::max(scale, std::abs(c));
  double gap = 0.0;
  for (const auto& [n, c] : a.modes()) gap = std::max(gap, std::abs(c - b.coefficient(n)));
  for (const auto& [n, c] : b.modes()) gap = std::max(gap, std::abs(c - a.coefficient(n)));
  return scale > 0.0 ? gap / scale : gap;
}

}  // namespace torlin::testing
