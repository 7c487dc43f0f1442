#include "qstep/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "qstep/errors.hpp"

namespace qstep {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = p1;
      dp = n * (x * pn - p0) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root; store ascending.
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.nodes[i] = mid - half * x;
    rule.weights[n - 1 - i] = half * w;
    rule.weights[i] = half * w;
  }
  return rule;
}

}  // namespace qstep
