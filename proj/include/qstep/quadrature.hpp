#pragma once

#include <vector>

namespace qstep {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped onto [a, b]. Nodes ascending.
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace qstep
