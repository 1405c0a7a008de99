#pragma once

#include <vector>

namespace vesicle {

/// Nodes and weights for quadrature on an interval.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b]. Nodes are interior, so an
/// integrand singular at the endpoints (poles of a parameterization) is
/// never evaluated there.
QuadRule gauss_legendre(int n, double a, double b);

/// Periodic trapezoid rule with n nodes on [0, period); spectrally accurate
/// for smooth periodic integrands.
QuadRule periodic_trapezoid(int n, double period);

}  // namespace vesicle
